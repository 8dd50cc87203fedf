#include "icd/engine.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace icd {

Engine::Engine(RankAssignment ranks, PropagationPolicy policy)
    : ranks_{std::move(ranks)}, policy_{policy}, policy_rng_{policy.seed}, graph_{ranks_.vertex_count()} {
    const std::size_t n = ranks_.vertex_count();
    labels_.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        labels_.push_back(initial_label(v, ranks_.rank(v)));
    }
    same_label_preds_.resize(n);
    change_counter_.assign(n, 0);
}

Label Engine::initial_label(VertexId v, Rank r) {
    return r.is_finite() ? Label::singleton(v, r) : Label{};
}

void Engine::require_running() const {
    if (halted_) {
        throw std::logic_error("engine halted after cycle");
    }
}

VertexId Engine::add_vertex() {
    require_running();
    const VertexId v = ranks_.add_vertex();
    graph_.add_vertex();
    labels_.push_back(initial_label(v, ranks_.rank(v)));
    same_label_preds_.emplace_back();
    change_counter_.push_back(0);
    return v;
}

InsertOutcome Engine::insert(VertexId u, VertexId v) { return insert_impl(u, v, nullptr); }

InsertOutcome Engine::insert_with_arc_rank(VertexId u, VertexId v, std::optional<Rank> arc_rank) {
    if (ranks_.mode() != RankMode::ArcQ) {
        throw std::logic_error("explicit arc ranks require ArcQ mode");
    }
    return insert_impl(u, v, &arc_rank);
}

BackwardResult Engine::backward_search(VertexId u, VertexId v, const Label& label_u) const {
    // The maintained lists name exactly the in-neighbors sharing a vertex's
    // label, so membership decides propagation while label_u == l(u).
    if (label_u != labels_.at(u)) {
        return icd::backward_search(graph_, u, v, [&](VertexId, VertexId w) { return labels_[w] == label_u; });
    }
    return icd::backward_search(graph_, u, v, [&](VertexId from, VertexId w) {
        const auto& preds = same_label_preds_[from];
        return std::ranges::find(preds, w) != preds.end();
    });
}

ForwardResult Engine::forward_search(VertexId v, const Label& label_u, const BackwardResult& probed) const {
    return icd::forward_search(graph_, labels_, v, label_u, probed);
}

InsertOutcome Engine::insert_impl(VertexId u, VertexId v, const std::optional<Rank>* explicit_rank) {
    require_running();
    graph_.check_vertex(u);
    graph_.check_vertex(v);

    if (u == v) {
        graph_.add_arc(u, v);
        halted_ = true;
        return CycleDetected{{u, u}};
    }
    if (graph_.has_arc(u, v)) {
        return AlreadyOrdered{};
    }

    const Ordering order = cmp_lex(labels_[u], labels_[v]);
    if (order != Ordering::LexGreater) {
        const Label label_u = labels_[u];
        BackwardResult backward = backward_search(u, v, label_u);
        counters_.backward += backward.probes_sent;
        std::optional<ForwardResult> forward;
        std::optional<VertexId> meet;
        if (!backward.found && order == Ordering::LexLess) {
            forward = forward_search(v, label_u, backward);
            counters_.forward += forward->probes_sent;
            meet = forward->hit;
        }
        if (backward.found || meet) {
            auto witness = witness_cycle(backward, forward ? &*forward : nullptr, meet.value_or(v), u, v);
            graph_.add_arc(u, v);
            halted_ = true;
            return CycleDetected{std::move(witness)};
        }
    }

    const ArcId arc = graph_.add_arc(u, v);
    std::size_t changes = 0;
    if (ranks_.mode() == RankMode::ArcQ) {
        const ArcRankResult ranked =
            explicit_rank ? ranks_.assign_arc_rank(arc, v, *explicit_rank) : ranks_.arc_rank_on_insert(arc, v);
        if (ranked.rank_lowered) {
            changes += repair_after_rank_decrease(v, ranks_.rank(v));
        }
    }
    switch (cmp_lex(labels_[u], labels_[v])) {
    case Ordering::LexLess:
        changes += update_propagate(u, v);
        break;
    case Ordering::LexEqual:
        note_same_label(u, v);
        break;
    case Ordering::LexGreater:
        break;
    }
    if (order == Ordering::LexGreater && changes == 0) {
        return AlreadyOrdered{};
    }
    return LabelsUpdated{changes};
}

void Engine::note_same_label(VertexId from, VertexId to) {
    auto& preds = same_label_preds_[to];
    if (labels_[from] == labels_[to] && std::ranges::find(preds, from) == preds.end()) {
        preds.push_back(from);
    }
}

bool Engine::deliver_update(VertexId from, VertexId to) {
    ++counters_.update;
    Label merged = merge_for_arc(labels_[from], labels_[to], to, ranks_.rank(to));
    if (merged == labels_[to]) {
        note_same_label(from, to);
        return false;
    }
    labels_[to] = std::move(merged);
    ++change_counter_[to];
    same_label_preds_[to].clear();
    note_same_label(from, to);
    return true;
}

std::size_t Engine::update_propagate(VertexId u, VertexId v) {
    std::size_t changes = 0;
    if (deliver_update(u, v)) {
        ++changes;
        propagate_from(v, changes);
    }
    return changes;
}

std::size_t Engine::repair_after_rank_decrease(VertexId v, Rank new_rank) {
    if (!new_rank.is_finite()) {
        throw std::invalid_argument("repair needs a finite rank");
    }
    Label repaired = truncate_below(labels_.at(v), new_rank);
    repaired.push_back({v, new_rank});
    if (repaired == labels_[v]) {
        return 0;
    }
    labels_[v] = std::move(repaired);
    ++change_counter_[v];
    // No in-neighbor can carry a label that contains v.
    same_label_preds_[v].clear();
    std::size_t changes = 1;
    propagate_from(v, changes);
    return changes;
}

void Engine::propagate_from(VertexId start, std::size_t& changes) {
    switch (policy_.kind) {
    case PropagationKind::DepthFirst: {
        // Literal recursion: a changed head is followed before its siblings.
        struct Frame {
            VertexId vertex;
            std::size_t next;
        };
        std::vector<Frame> stack{{start, 0}};
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto outs = graph_.out(top.vertex);
            if (top.next == outs.size()) {
                stack.pop_back();
                continue;
            }
            const VertexId from = top.vertex;
            const VertexId w = outs[top.next++];
            if (deliver_update(from, w)) {
                ++changes;
                stack.push_back({w, 0});
            }
        }
        break;
    }
    case PropagationKind::BreadthFirst:
    case PropagationKind::RandomSeeded: {
        std::deque<VertexId> pending{start};
        std::unordered_set<VertexId> queued{start};
        while (!pending.empty()) {
            VertexId y;
            if (policy_.kind == PropagationKind::BreadthFirst) {
                y = pending.front();
                pending.pop_front();
            } else {
                std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
                const std::size_t i = pick(policy_rng_);
                y = pending[i];
                pending[i] = pending.back();
                pending.pop_back();
            }
            queued.erase(y);
            for (VertexId w : graph_.out(y)) {
                if (deliver_update(y, w)) {
                    ++changes;
                    if (queued.insert(w).second) {
                        pending.push_back(w);
                    }
                }
            }
        }
        break;
    }
    }
}

} // namespace icd
