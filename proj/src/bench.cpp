#include "icd/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "icd/oracle.hpp"
#include "icd/queue_engine.hpp"
#include "icd/snapshot.hpp"

namespace icd {

Variant parse_variant(std::string_view name) {
    if (name == "two-way-vertex") return Variant::TwoWayVertex;
    if (name == "two-way-arc") return Variant::TwoWayArc;
    if (name == "queue-full") return Variant::QueueFull;
    throw std::invalid_argument("unknown variant: " + std::string{name});
}

std::string_view variant_name(Variant v) {
    switch (v) {
    case Variant::TwoWayVertex: return "two-way-vertex";
    case Variant::TwoWayArc: return "two-way-arc";
    case Variant::QueueFull: return "queue-full";
    }
    return "?";
}

PolicyName parse_policy(std::string_view name) {
    if (name == "fifo") return PolicyName::Fifo;
    if (name == "lifo") return PolicyName::Lifo;
    if (name == "random") return PolicyName::Random;
    throw std::invalid_argument("unknown policy: " + std::string{name});
}

std::string_view policy_name(PolicyName p) {
    switch (p) {
    case PolicyName::Fifo: return "fifo";
    case PolicyName::Lifo: return "lifo";
    case PolicyName::Random: return "random";
    }
    return "?";
}

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t schedule_seed(std::uint64_t seed) { return mix(seed ^ 0x5c4e0ULL); }

} // namespace

std::uint64_t graph_seed(std::uint64_t seed) { return mix(seed); }

PropagationPolicy engine_policy(PolicyName p, std::uint64_t seed) {
    switch (p) {
    case PolicyName::Fifo: return {PropagationKind::BreadthFirst, seed};
    case PolicyName::Lifo: return {PropagationKind::DepthFirst, seed};
    case PolicyName::Random: return {PropagationKind::RandomSeeded, seed};
    }
    return {};
}

SchedulePolicy schedule_policy(PolicyName p, std::uint64_t seed) {
    switch (p) {
    case PolicyName::Fifo: return {ScheduleKind::Fifo, seed};
    case PolicyName::Lifo: return {ScheduleKind::Lifo, seed};
    case PolicyName::Random: return {ScheduleKind::RandomSeeded, seed};
    }
    return {};
}

QPreset default_preset(Variant v) {
    switch (v) {
    case Variant::TwoWayVertex: return QPreset::MsgVertex;
    case Variant::TwoWayArc: return QPreset::MsgArc;
    case Variant::QueueFull: return QPreset::FullRank;
    }
    return QPreset::FullRank;
}

double resolve_q(const RunConfig& config, std::size_t n, std::size_t m) {
    if (config.q) {
        return *config.q;
    }
    return preset_q(config.preset.value_or(default_preset(config.variant)), n, m);
}

RankAssignment make_ranks(const RunConfig& config, std::size_t n, std::size_t m) {
    const double q = resolve_q(config, n, m);
    if (config.variant == Variant::TwoWayArc) {
        return RankAssignment::arc_scheme(n, q, config.seed);
    }
    if (q >= 1.0) {
        return RankAssignment::full(n, config.seed);
    }
    return RankAssignment::vertex_scheme(n, q, config.seed);
}

RunRecord run_record(const ArcSequence& seq, const RunConfig& config, std::ostream* trace) {
    RunRecord r;
    r.n = seq.n;
    r.m = seq.arcs.size();
    r.q = resolve_q(config, seq.n, seq.arcs.size());
    r.preset = config.preset;
    r.variant = config.variant;
    r.policy = config.policy;
    r.seed = config.seed;

    const auto start = std::chrono::steady_clock::now();
    MessageSimulator sim{make_ranks(config, seq.n, seq.arcs.size()),
                         config.variant == Variant::QueueFull ? Protocol::Queue : Protocol::TwoWay,
                         schedule_policy(config.policy, schedule_seed(config.seed))};
    sim.set_trace(trace);
    SequenceResult result = sim.run_sequence(seq.arcs);
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    r.counters = result.totals;
    r.label_changes = result.label_changes;
    r.inserted = result.records.size();
    r.outcome = sim.halted() ? OutcomeKind::CycleDetected : OutcomeKind::LabelsUpdated;
    if (result.final_outcome) {
        if (const auto* c = std::get_if<CycleDetected>(&*result.final_outcome)) {
            r.witness = c->witness;
        }
    }
    return r;
}

nlohmann::json to_json(const RunRecord& r) {
    const MessageCounters& c = r.counters;
    nlohmann::json j{{"n", r.n},
                     {"m", r.m},
                     {"q", r.q},
                     {"variant", variant_name(r.variant)},
                     {"policy", policy_name(r.policy)},
                     {"seed", r.seed},
                     {"messages",
                      {{"backward", c.backward},
                       {"forward", c.forward},
                       {"cycle", c.cycle},
                       {"nocycle", c.nocycle},
                       {"update", c.update},
                       {"reply", c.reply},
                       {"init_reply", c.init_reply},
                       {"total", c.total()}}},
                     {"label_changes", r.label_changes},
                     {"inserted", r.inserted},
                     {"wall_ms", r.wall_ms},
                     {"outcome", outcome_name(r.outcome)}};
    if (r.outcome == OutcomeKind::CycleDetected) {
        j["witness"] = r.witness;
    }
    return j;
}

std::string csv_row(const RunRecord& r) {
    const MessageCounters& c = r.counters;
    char q[32];
    char wall[32];
    std::snprintf(q, sizeof q, "%.6g", r.q);
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    std::string row;
    row += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + q + ',';
    row += std::string{variant_name(r.variant)} + ',' + std::string{policy_name(r.policy)} + ',';
    row += std::to_string(r.seed) + ',';
    for (std::uint64_t x : {c.backward, c.forward, c.cycle, c.nocycle, c.update, c.reply, c.total()}) {
        row += std::to_string(x) + ',';
    }
    row += std::to_string(r.label_changes) + ',' + wall + ',' + std::string{outcome_name(r.outcome)};
    return row;
}

namespace {

bool is_closed_walk(const Digraph& g, const std::vector<VertexId>& walk, VertexId u, VertexId v) {
    if (walk.size() < 2 || walk.front() != v || walk.back() != v || walk[walk.size() - 2] != u) {
        return false;
    }
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        if (!g.has_arc(walk[i], walk[i + 1])) {
            return false;
        }
    }
    return true;
}

template <class E>
std::string compare_state(const E& engine, std::span<const Label> expected) {
    for (VertexId x = 0; x < expected.size(); ++x) {
        if (engine.label(x) != expected[x]) {
            return "label of " + std::to_string(x) + " is '" + render(engine.label(x)) + "', expected '" +
                   render(expected[x]) + "'";
        }
    }
    const auto violations = oracle::check_no_path_theorem(engine.graph(), engine.labels());
    if (!violations.empty()) {
        return "weak order violated at (" + std::to_string(violations.front().first) + ", " +
               std::to_string(violations.front().second) + ")";
    }
    return {};
}

template <class E, class Insert, class Extra>
VerifyReport replay_checked(E& engine, const ArcSequence& seq, Insert&& insert, Extra&& extra) {
    VerifyReport report;
    for (std::size_t i = 0; i < seq.arcs.size(); ++i) {
        const auto [u, v] = seq.arcs[i];
        const bool expect_cycle = oracle::reaches(engine.graph(), v, u);
        const InsertOutcome outcome = insert(engine, u, v, i);
        ++report.insertions_checked;
        auto fail = [&](std::string what) {
            report.ok = false;
            report.failing_prefix = i + 1;
            report.detail = "arc " + std::to_string(u) + "->" + std::to_string(v) + ": " + std::move(what);
            return report;
        };
        const bool got_cycle = kind_of(outcome) == OutcomeKind::CycleDetected;
        if (got_cycle != expect_cycle) {
            return fail(expect_cycle ? "cycle missed" : "spurious cycle");
        }
        if (got_cycle) {
            if (!is_closed_walk(engine.graph(), std::get<CycleDetected>(outcome).witness, u, v)) {
                return fail("witness is not a closed walk through the arc");
            }
            break;
        }
        const auto expected = oracle::sweep_labels(engine.graph(), engine.ranks().vertex_ranks());
        if (std::string what = compare_state(engine, expected); !what.empty()) {
            return fail(std::move(what));
        }
        if (std::string what = extra(engine); !what.empty()) {
            return fail(std::move(what));
        }
    }
    return report;
}

} // namespace

VerifyReport verify_sequence(const ArcSequence& seq, const RunConfig& config, const VerifyOptions& options) {
    const std::size_t m = seq.arcs.size();
    const SchedulePolicy schedule = schedule_policy(config.policy, schedule_seed(config.seed));
    VerifyReport report;
    std::string engine_snapshot;

    if (config.variant == Variant::QueueFull) {
        QueueEngine engine{make_ranks(config, seq.n, m)};
        auto insert = [](QueueEngine& e, VertexId u, VertexId v, std::size_t) { return e.q_insert(u, v); };
        auto caches_safe = [](const QueueEngine& e) -> std::string {
            for (VertexId w = 0; w < e.graph().vertex_count(); ++w) {
                for (const auto& [t, cached] : e.cache(w).cached) {
                    if (cmp_lex(cached, e.label(t)) == Ordering::LexLess) {
                        return "cache of " + std::to_string(w) + " for " + std::to_string(t) + " is below the label";
                    }
                }
            }
            return {};
        };
        report = replay_checked(engine, seq, insert, caches_safe);
        engine_snapshot = dump_snapshot(snapshot_json(engine.graph(), engine.ranks(), engine.labels(), engine.halted()));
    } else {
        Engine engine{make_ranks(config, seq.n, m), engine_policy(config.policy, schedule_seed(config.seed))};
        auto insert = [&](Engine& e, VertexId u, VertexId v, std::size_t step) {
            InsertOutcome o = e.insert(u, v);
            if (options.after_insert) {
                options.after_insert(e, step);
            }
            return o;
        };
        auto lists_exact = [](const Engine& e) -> std::string {
            for (VertexId x = 0; x < e.graph().vertex_count(); ++x) {
                std::vector<VertexId> got{e.same_label_preds(x).begin(), e.same_label_preds(x).end()};
                auto want = oracle::same_label_preds(e.graph(), e.labels(), x);
                std::ranges::sort(got);
                std::ranges::sort(want);
                if (got != want) {
                    return "same-label list of " + std::to_string(x) + " is stale";
                }
            }
            return {};
        };
        report = replay_checked(engine, seq, insert, lists_exact);
        engine_snapshot = dump_snapshot(snapshot(engine));
    }
    if (!report.ok) {
        return report;
    }

    MessageSimulator sim{make_ranks(config, seq.n, m),
                         config.variant == Variant::QueueFull ? Protocol::Queue : Protocol::TwoWay, schedule};
    sim.run_sequence(std::span{seq.arcs}.first(report.insertions_checked));
    const std::string sim_snapshot =
        dump_snapshot(snapshot_json(sim.graph(), sim.ranks(), sim.labels(), sim.halted()));
    if (sim_snapshot != engine_snapshot) {
        report.ok = false;
        report.failing_prefix = report.insertions_checked;
        report.detail = "message simulator disagrees with the engine";
    }
    return report;
}

FitResult fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_loglog: size mismatch");
    }
    FitResult fit;
    fit.points = x.size();
    if (x.size() < 2) {
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = static_cast<double>(x.size());
    fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / k;
    return fit;
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec) {
    struct Job {
        std::size_t n;
        Variant variant;
        std::optional<QPreset> preset;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    const std::vector<std::optional<QPreset>> presets =
        spec.presets.empty() ? std::vector<std::optional<QPreset>>{std::nullopt} : spec.presets;
    for (std::size_t n : spec.sizes) {
        for (Variant variant : spec.variants) {
            for (const auto& preset : presets) {
                for (std::size_t s = 0; s < spec.seeds; ++s) {
                    jobs.push_back({n, variant, preset, spec.seed + s});
                }
            }
        }
    }
    std::vector<RunRecord> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                const Job& job = jobs[i];
                GeneratorSpec gen;
                gen.kind = spec.generator;
                gen.n = job.n;
                gen.m = static_cast<std::size_t>(std::llround(spec.arcs_per_vertex * static_cast<double>(job.n)));
                gen.layers = spec.layers;
                gen.max_degree = spec.max_degree;
                gen.seed = graph_seed(job.seed);
                const ArcSequence seq = generate(gen);
                RunConfig config{job.variant, spec.q, job.preset, spec.policy, job.seed};
                rows[i] = run_record(seq, config);
            } catch (...) {
                const std::lock_guard lock{error_mutex};
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(spec.jobs, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return rows;
}

} // namespace icd
