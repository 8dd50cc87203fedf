#include "icd/queue_engine.hpp"

#include <stdexcept>
#include <unordered_set>

namespace icd {

void NeighborCache::put(VertexId target, Label label) {
    auto it = cached.find(target);
    if (it != cached.end()) {
        queue.erase(CachedLabel{it->second, target});
        it->second = label;
    } else {
        cached.emplace(target, label);
    }
    queue.insert(CachedLabel{std::move(label), target});
}

QueueEngine::QueueEngine(RankAssignment ranks) : ranks_{std::move(ranks)}, graph_{ranks_.vertex_count()} {
    if (ranks_.mode() == RankMode::ArcQ) {
        throw std::invalid_argument("queue engine needs a vertex ranking");
    }
    const std::size_t n = ranks_.vertex_count();
    labels_.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        const Rank r = ranks_.rank(v);
        labels_.push_back(r.is_finite() ? Label::singleton(v, r) : Label{});
    }
    caches_.resize(n);
    change_counter_.assign(n, 0);
}

void QueueEngine::require_running() const {
    if (halted_) {
        throw std::logic_error("engine halted after cycle");
    }
}

InsertOutcome QueueEngine::q_insert(VertexId u, VertexId v) {
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
        const BackwardResult backward =
            backward_search(graph_, u, v, [&](VertexId, VertexId w) { return labels_[w] == label_u; });
        counters_.backward += backward.probes_sent;
        std::optional<ForwardResult> forward;
        if (!backward.found && order == Ordering::LexLess) {
            forward = forward_search(graph_, labels_, v, label_u, backward);
            counters_.forward += forward->probes_sent;
        }
        if (backward.found || (forward && forward->hit)) {
            const VertexId meet = forward && forward->hit ? *forward->hit : v;
            auto witness = witness_cycle(backward, forward ? &*forward : nullptr, meet, u, v);
            graph_.add_arc(u, v);
            halted_ = true;
            return CycleDetected{std::move(witness)};
        }
    }

    graph_.add_arc(u, v);
    caches_[u].put(v, labels_[v]);
    ++counters_.init_reply;
    if (order == Ordering::LexGreater) {
        return AlreadyOrdered{};
    }
    const PropagateResult result = drain(u);
    return LabelsUpdated{result.change_count};
}

PropagateResult QueueEngine::q_propagate(VertexId w, Label new_label) {
    require_running();
    if (cmp_lex(new_label, labels_.at(w)) != Ordering::LexLess) {
        throw std::invalid_argument("q_propagate needs a lex-smaller label");
    }
    labels_[w] = std::move(new_label);
    ++change_counter_[w];
    PropagateResult result = drain(w);
    ++result.change_count;
    return result;
}

PropagateResult QueueEngine::drain(VertexId start) {
    PropagateResult result;
    std::vector<VertexId> pending{start};
    std::unordered_set<VertexId> queued{start};
    while (!pending.empty()) {
        const VertexId w = pending.back();
        pending.pop_back();
        queued.erase(w);
        auto& cache = caches_[w];
        while (!cache.queue.empty() && cmp_lex(cache.queue.rbegin()->label, labels_[w]) == Ordering::LexGreater) {
            const VertexId t = cache.queue.rbegin()->target;

            // If t has not changed since the last reply over this arc, the
            // cache is exact and this send has to change t.
            const std::uint64_t key = (std::uint64_t{w} << 32) | t;
            const auto last = last_send_.find(key);
            const bool exact = last != last_send_.end() && last->second == change_counter_[t];

            ++counters_.update;
            ++result.messages_sent;
            Label merged = merge_for_arc(labels_[w], labels_[t], t, ranks_.rank(t));
            if (merged != labels_[t]) {
                labels_[t] = std::move(merged);
                ++change_counter_[t];
                ++result.change_count;
                if (queued.insert(t).second) {
                    pending.push_back(t);
                }
            } else if (exact) {
                ++futile_repeats_;
            }
            last_send_[key] = change_counter_[t];
            ++counters_.reply;
            ++result.messages_sent;
            cache.put(t, labels_[t]);
        }
    }
    return result;
}

} // namespace icd
