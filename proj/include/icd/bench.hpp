#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "icd/engine.hpp"
#include "icd/generators.hpp"
#include "icd/message_sim.hpp"
#include "icd/outcome.hpp"
#include "icd/rank_scheme.hpp"

namespace icd {

enum class Variant { TwoWayVertex, TwoWayArc, QueueFull };
enum class PolicyName { Fifo, Lifo, Random };

Variant parse_variant(std::string_view name); // throws std::invalid_argument
std::string_view variant_name(Variant v);
PolicyName parse_policy(std::string_view name);
std::string_view policy_name(PolicyName p);

// fifo: breadth-first propagation, FIFO delivery.
// lifo: depth-first propagation, LIFO delivery.
// random: seeded random order for both.
PropagationPolicy engine_policy(PolicyName p, std::uint64_t seed);
SchedulePolicy schedule_policy(PolicyName p, std::uint64_t seed);

// Preset used when neither q nor a preset is given.
QPreset default_preset(Variant v);

struct RunConfig {
    Variant variant = Variant::TwoWayVertex;
    std::optional<double> q; // wins over preset
    std::optional<QPreset> preset;
    PolicyName policy = PolicyName::Fifo;
    std::uint64_t seed = 0; // rank seed; schedule seed is derived from it
};

double resolve_q(const RunConfig& config, std::size_t n, std::size_t m);
RankAssignment make_ranks(const RunConfig& config, std::size_t n, std::size_t m);

struct RunRecord {
    std::size_t n = 0;
    std::size_t m = 0;
    double q = 0;
    std::optional<QPreset> preset; // as configured; q decides the ranking
    Variant variant = Variant::TwoWayVertex;
    PolicyName policy = PolicyName::Fifo;
    std::uint64_t seed = 0;
    MessageCounters counters;
    std::size_t label_changes = 0;
    double wall_ms = 0;
    OutcomeKind outcome = OutcomeKind::LabelsUpdated; // CycleDetected iff halted
    std::size_t inserted = 0;                          // arcs processed, the cycle arc included
    std::vector<VertexId> witness;
};

// Replays the sequence through the message simulator, stopping at the first
// cycle. A non-null trace receives one line per delivered message.
RunRecord run_record(const ArcSequence& seq, const RunConfig& config, std::ostream* trace = nullptr);

nlohmann::json to_json(const RunRecord& r);

inline constexpr std::string_view kCsvHeader =
    "n,m,q,variant,policy,seed,backward,forward,cycle,nocycle,update,reply,total_msgs,label_changes,wall_ms,outcome";
std::string csv_row(const RunRecord& r);

struct VerifyReport {
    bool ok = true;
    std::size_t insertions_checked = 0;
    std::size_t failing_prefix = 0; // arcs replayed up to and including the failure
    std::string detail;
};

struct VerifyOptions {
    // Called after each insertion of the two-way engines, before the checks.
    std::function<void(Engine&, std::size_t step)> after_insert;
};

// Replays the sequence and after every insertion compares detection with
// reachability, labels with the static labeling, the weak order, and (for the
// two-way engines) the same-label lists. At the end the message simulator's
// snapshot must equal the engine's.
VerifyReport verify_sequence(const ArcSequence& seq, const RunConfig& config, const VerifyOptions& options = {});

struct FitResult {
    double slope = 0;
    double intercept = 0;
    std::size_t points = 0;
};

// Least-squares line through (log x, log y).
FitResult fit_loglog(std::span<const double> x, std::span<const double> y);

struct SweepSpec {
    std::vector<std::size_t> sizes;
    std::vector<Variant> variants;
    std::vector<std::optional<QPreset>> presets; // nullopt = variant default
    std::optional<double> q;
    PolicyName policy = PolicyName::Fifo;
    std::uint64_t seed = 0;
    std::size_t seeds = 1;
    GeneratorKind generator = GeneratorKind::RandomDagOrder;
    double arcs_per_vertex = 2.0;
    std::size_t layers = 4;
    std::size_t max_degree = 0;
    unsigned jobs = 1;
};

// Graph seed for sweep trial `seed` so it differs from the rank stream.
std::uint64_t graph_seed(std::uint64_t seed);

// Rows ordered by size, variant, preset, seed, whatever the job count.
std::vector<RunRecord> run_sweep(const SweepSpec& spec);

} // namespace icd
