#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "icd/digraph.hpp"
#include "icd/label.hpp"
#include "icd/outcome.hpp"
#include "icd/queue_engine.hpp"
#include "icd/rank_scheme.hpp"

namespace icd {

enum class ScheduleKind { Fifo, Lifo, RandomSeeded };

// Delivery order of in-flight messages.
struct SchedulePolicy {
    ScheduleKind kind = ScheduleKind::Fifo;
    std::uint64_t seed = 0;
};

// TwoWay: every label change is pushed to all out-neighbors.
// Queue: pushes are filtered through per-neighbor label caches, and every
// update is answered with the receiver's current label.
enum class Protocol { TwoWay, Queue };

struct Message {
    MessageKind kind;
    VertexId src;
    VertexId dst;
    ArcId via_arc;
    Label label;
};

struct SimInsertResult {
    InsertOutcome outcome;
    MessageCounters delta;
};

struct InsertRecord {
    Arc arc;
    OutcomeKind outcome;
    MessageCounters counters;
    std::size_t label_changes = 0;
};

struct SequenceResult {
    std::vector<InsertRecord> records;
    std::optional<InsertOutcome> final_outcome; // empty for an empty sequence
    MessageCounters totals;
    std::size_t label_changes = 0;
};

/// Discrete-event simulation of the labeling protocol as per-vertex message
/// handlers.
///
/// Each insertion runs to quiescence before the next is injected: first the
/// backward search, then (if needed) the forward search, then label updates.
/// Probes are answered with "cycle" or "no-cycle" replies; a vertex that
/// forwarded a probe answers its requesters once all of its own probes are
/// answered. A cycle reply reaching the initiator discards the messages
/// still in flight.
class MessageSimulator {
  public:
    explicit MessageSimulator(RankAssignment ranks, Protocol protocol = Protocol::TwoWay,
                              SchedulePolicy policy = {});

    // Throws std::logic_error("engine halted after cycle") once halted.
    SimInsertResult simulate_insert(VertexId u, VertexId v);
    // Folds simulate_insert over the arcs, stopping at the first cycle.
    SequenceResult run_sequence(std::span<const Arc> arcs);

    // One line per delivered message: seq=<k> kind=<K> src=<u> dst=<v> label=<rendered>
    void set_trace(std::ostream* sink) { trace_ = sink; }

    [[nodiscard]] const Digraph& graph() const { return graph_; }
    [[nodiscard]] const RankAssignment& ranks() const { return ranks_; }
    [[nodiscard]] std::span<const Label> labels() const { return labels_; }
    [[nodiscard]] const Label& label(VertexId v) const { return labels_.at(v); }
    [[nodiscard]] std::span<const VertexId> same_label_preds(VertexId v) const { return same_label_preds_.at(v); }
    [[nodiscard]] const NeighborCache& cache(VertexId w) const { return caches_.at(w); }
    [[nodiscard]] const MessageCounters& counters() const { return counters_; }
    [[nodiscard]] std::uint64_t change_count(VertexId v) const { return change_counter_.at(v); }
    [[nodiscard]] bool halted() const { return halted_; }
    [[nodiscard]] Protocol protocol() const { return protocol_; }

  private:
    enum class Phase { Backward, Forward, Update };

    struct ProbeState {
        std::size_t pending = 0;
        std::vector<VertexId> requesters; // front() is the parent
        bool resolved = false;
        bool cycle = false;
    };

    struct SearchState {
        VertexId root = 0;
        std::size_t root_pending = 0;
        bool cycle = false;
        std::unordered_map<VertexId, VertexId> parent; // first sender of a probe
        std::unordered_map<VertexId, ProbeState> waiting;
        std::unordered_map<VertexId, VertexId> cycle_from;
    };

    void send(MessageKind kind, VertexId src, VertexId dst, Label label = {});
    void run_network();
    void deliver(const Message& m);
    void deliver_probe(const Message& m, SearchState& search, bool backward);
    void deliver_reply(const Message& m, SearchState& search, bool backward);
    void deliver_update(const Message& m);
    void announce(VertexId w);
    void set_label(VertexId w, Label label);
    void note_same_label(VertexId from, VertexId to, const Label& carried);
    std::vector<VertexId> witness(VertexId u, VertexId v) const;
    void require_running() const;

    RankAssignment ranks_;
    Protocol protocol_;
    SchedulePolicy policy_;
    std::mt19937_64 schedule_rng_;
    Digraph graph_;
    std::vector<Label> labels_;
    std::vector<std::vector<VertexId>> same_label_preds_;
    std::vector<NeighborCache> caches_;
    std::vector<std::uint64_t> change_counter_;
    MessageCounters counters_;
    bool halted_ = false;
    std::ostream* trace_ = nullptr;
    std::uint64_t seq_ = 0;

    // Per-insertion context.
    std::deque<Message> network_;
    Phase phase_ = Phase::Update;
    VertexId target_ = 0; // v, the head of the arc being inserted
    Label probe_label_;   // l(u)
    SearchState backward_;
    SearchState forward_;
    std::size_t changes_ = 0;
};

std::string_view schedule_name(ScheduleKind kind);

} // namespace icd
