#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "icd/digraph.hpp"
#include "icd/label.hpp"
#include "icd/outcome.hpp"
#include "icd/rank_scheme.hpp"
#include "icd/search.hpp"

namespace icd {

enum class PropagationKind { DepthFirst, BreadthFirst, RandomSeeded };

// Order in which label changes are pushed across out-arcs. Final labels do
// not depend on it; change and message counts do.
struct PropagationPolicy {
    PropagationKind kind = PropagationKind::DepthFirst;
    std::uint64_t seed = 0;
};

/// Incremental cycle detection over a growing DAG by recursive labels.
///
/// Each insert runs detection read-only against the pre-insertion labels
/// (backward search from u, and forward search from v when l(u) is
/// lex-smaller than l(v)), and only then adds the arc and propagates label
/// updates. The first detected cycle halts the engine with labels untouched.
class Engine {
  public:
    explicit Engine(RankAssignment ranks, PropagationPolicy policy = {});

    VertexId add_vertex();

    // Throws std::logic_error("engine halted after cycle") once halted.
    InsertOutcome insert(VertexId u, VertexId v);
    // ArcQ mode: insert with the arc's rank given instead of drawn.
    InsertOutcome insert_with_arc_rank(VertexId u, VertexId v, std::optional<Rank> arc_rank);

    // Detection phases, exposed for inspection. Both read only.
    [[nodiscard]] BackwardResult backward_search(VertexId u, VertexId v, const Label& label_u) const;
    [[nodiscard]] ForwardResult forward_search(VertexId v, const Label& label_u, const BackwardResult& probed) const;

    // Merges l(u) into l(v) over the present arc (u, v) and propagates every
    // resulting change. Returns the number of label changes.
    std::size_t update_propagate(VertexId u, VertexId v);

    // ArcQ mode, after the rank of v dropped to new_rank: truncates l(v)
    // below new_rank, appends v, and propagates. Returns the number of changes.
    std::size_t repair_after_rank_decrease(VertexId v, Rank new_rank);

    [[nodiscard]] const Digraph& graph() const { return graph_; }
    [[nodiscard]] const RankAssignment& ranks() const { return ranks_; }
    [[nodiscard]] std::span<const Label> labels() const { return labels_; }
    [[nodiscard]] const Label& label(VertexId v) const { return labels_.at(v); }
    [[nodiscard]] std::span<const VertexId> same_label_preds(VertexId v) const { return same_label_preds_.at(v); }
    [[nodiscard]] std::uint64_t change_count(VertexId v) const { return change_counter_.at(v); }
    [[nodiscard]] const MessageCounters& counters() const { return counters_; }
    [[nodiscard]] bool halted() const { return halted_; }
    [[nodiscard]] PropagationPolicy policy() const { return policy_; }

    // Overwrites a label without any bookkeeping. Only for negative-control
    // tests of the verification tooling.
    void corrupt_label_for_testing(VertexId v, Label label) { labels_.at(v) = std::move(label); }

  private:
    InsertOutcome insert_impl(VertexId u, VertexId v, const std::optional<Rank>* explicit_rank);
    static Label initial_label(VertexId v, Rank r);
    bool deliver_update(VertexId from, VertexId to);
    void propagate_from(VertexId start, std::size_t& changes);
    void note_same_label(VertexId from, VertexId to);
    void require_running() const;

    RankAssignment ranks_;
    PropagationPolicy policy_;
    std::mt19937_64 policy_rng_;
    Digraph graph_;
    std::vector<Label> labels_;
    std::vector<std::vector<VertexId>> same_label_preds_;
    std::vector<std::uint64_t> change_counter_;
    MessageCounters counters_;
    bool halted_ = false;
};

} // namespace icd
