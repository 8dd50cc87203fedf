#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "icd/digraph.hpp"
#include "icd/label.hpp"
#include "icd/outcome.hpp"
#include "icd/rank_scheme.hpp"
#include "icd/search.hpp"

namespace icd {

// Cached view a vertex keeps of one out-neighbor's label.
struct CachedLabel {
    Label label;
    VertexId target;
};

struct CacheOrder {
    bool operator()(const CachedLabel& a, const CachedLabel& b) const {
        const Ordering o = cmp_lex(a.label, b.label);
        if (o != Ordering::LexEqual) {
            return o == Ordering::LexLess;
        }
        return a.target < b.target;
    }
};

// Per-vertex caches of out-neighbor labels, keyed for "largest cached label first".
struct NeighborCache {
    std::unordered_map<VertexId, Label> cached;
    std::set<CachedLabel, CacheOrder> queue;

    void put(VertexId target, Label label);
};

struct PropagateResult {
    std::uint64_t messages_sent = 0; // update messages plus label replies
    std::size_t change_count = 0;
};

/// Incremental cycle detection with queue-based propagation.
///
/// Detection is the same as Engine. Propagation differs: every vertex w keeps
/// the last label it heard from each out-neighbor u and, after its own label
/// drops, messages only the u whose cached label is still lex-greater. Each
/// receiver merges and replies with its current label, which refreshes the
/// cache. Intended for full ranking; any vertex scheme is accepted.
class QueueEngine {
  public:
    explicit QueueEngine(RankAssignment ranks);

    InsertOutcome q_insert(VertexId u, VertexId v);
    InsertOutcome insert(VertexId u, VertexId v) { return q_insert(u, v); }

    // Lowers l(w) to new_label (which must be lex-smaller than the current
    // label) and propagates.
    PropagateResult q_propagate(VertexId w, Label new_label);

    [[nodiscard]] const Digraph& graph() const { return graph_; }
    [[nodiscard]] const RankAssignment& ranks() const { return ranks_; }
    [[nodiscard]] std::span<const Label> labels() const { return labels_; }
    [[nodiscard]] const Label& label(VertexId v) const { return labels_.at(v); }
    [[nodiscard]] const NeighborCache& cache(VertexId w) const { return caches_.at(w); }
    [[nodiscard]] std::uint64_t change_count(VertexId v) const { return change_counter_.at(v); }
    [[nodiscard]] const MessageCounters& counters() const { return counters_; }
    [[nodiscard]] bool halted() const { return halted_; }

    // Sends from w to u that left u unchanged although u had not changed
    // since the previous send over the same arc. Stays zero while the queue
    // threshold holds.
    [[nodiscard]] std::uint64_t futile_repeat_sends() const { return futile_repeats_; }

  private:
    // Drains the out-queues of `start` and of every vertex that changes.
    PropagateResult drain(VertexId start);
    void require_running() const;

    RankAssignment ranks_;
    Digraph graph_;
    std::vector<Label> labels_;
    std::vector<NeighborCache> caches_;
    std::vector<std::uint64_t> change_counter_;
    // (w, u) -> change count of u after w's last send
    std::unordered_map<std::uint64_t, std::uint64_t> last_send_;
    std::uint64_t futile_repeats_ = 0;
    MessageCounters counters_;
    bool halted_ = false;
};

} // namespace icd
