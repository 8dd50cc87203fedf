#include "icd/oracle.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace icd::oracle {

namespace {

template <class Next>
std::vector<char> closure(std::size_t n, VertexId start, Next&& next) {
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (VertexId y : next(x)) {
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return seen;
}

std::vector<VertexId> topological_order(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> indeg(n);
    for (VertexId v = 0; v < n; ++v) {
        indeg[v] = g.in(v).size();
    }
    std::vector<VertexId> order;
    order.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        if (indeg[v] == 0) {
            order.push_back(v);
        }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (VertexId w : g.out(order[i])) {
            if (--indeg[w] == 0) {
                order.push_back(w);
            }
        }
    }
    return order;
}

void check_ranks(const Digraph& g, std::span<const Rank> ranks) {
    if (ranks.size() != g.vertex_count()) {
        throw std::invalid_argument("rank vector does not match the graph");
    }
}

} // namespace

std::vector<char> successors(const Digraph& g, VertexId a) {
    g.check_vertex(a);
    return closure(g.vertex_count(), a, [&](VertexId x) { return g.out(x); });
}

std::vector<char> predecessors(const Digraph& g, VertexId b) {
    g.check_vertex(b);
    return closure(g.vertex_count(), b, [&](VertexId x) { return g.in(x); });
}

bool reaches(const Digraph& g, VertexId a, VertexId b) {
    g.check_vertex(b);
    return successors(g, a)[b] != 0;
}

bool is_acyclic(const Digraph& g) { return topological_order(g).size() == g.vertex_count(); }

StaticLabeling static_labels(const Digraph& g, std::span<const Rank> ranks) {
    check_ranks(g, ranks);
    if (!is_acyclic(g)) {
        throw std::invalid_argument("static_labels: graph is cyclic");
    }
    const std::size_t n = g.vertex_count();
    StaticLabeling out(n);
    for (VertexId v = 0; v < n; ++v) {
        const std::vector<char> pred = predecessors(g, v);
        std::vector<char> candidates = pred; // A-bar_1(v) = P(v)
        Label label;
        for (;;) {
            std::optional<VertexId> best;
            for (VertexId w = 0; w < n; ++w) {
                if (candidates[w] && ranks[w].is_finite() && (!best || ranks[w] < ranks[*best])) {
                    best = w;
                }
            }
            if (!best) {
                break;
            }
            label.push_back({*best, ranks[*best]});
            // A-bar_{i+1}(v) = D(l_i(v), v) \ {l_i(v)} = S(l_i) ∩ P(v) minus l_i.
            const std::vector<char> succ = successors(g, *best);
            for (VertexId w = 0; w < n; ++w) {
                candidates[w] = pred[w] && succ[w] && w != *best;
            }
        }
        out[v] = std::move(label);
    }
    return out;
}

StaticLabeling sweep_labels(const Digraph& g, std::span<const Rank> ranks) {
    check_ranks(g, ranks);
    const std::vector<VertexId> order = topological_order(g);
    if (order.size() != g.vertex_count()) {
        throw std::invalid_argument("sweep_labels: graph is cyclic");
    }
    StaticLabeling out(g.vertex_count());
    for (VertexId v : order) {
        const Rank r = ranks[v];
        std::optional<Label> best;
        auto offer = [&](Label candidate) {
            if (r.is_finite()) {
                candidate.push_back({v, r});
            }
            if (!best || cmp_lex(candidate, *best) == Ordering::LexLess) {
                best = std::move(candidate);
            }
        };
        offer(Label{});
        for (VertexId y : g.in(v)) {
            offer(truncate_below(out[y], r));
        }
        out[v] = std::move(*best);
    }
    return out;
}

std::vector<std::pair<VertexId, VertexId>> check_no_path_theorem(const Digraph& g, std::span<const Label> labels) {
    std::vector<std::pair<VertexId, VertexId>> violations;
    const std::size_t n = g.vertex_count();
    for (VertexId v = 0; v < n; ++v) {
        const std::vector<char> succ = successors(g, v);
        for (VertexId u = 0; u < n; ++u) {
            if (succ[u] && cmp_lex(labels[u], labels[v]) == Ordering::LexGreater) {
                violations.emplace_back(u, v);
            }
        }
    }
    return violations;
}

std::size_t backward_set_size(const Digraph& g, std::span<const Label> labels, std::span<const Rank> ranks,
                              VertexId v) {
    const std::vector<char> pred = predecessors(g, v);
    std::size_t count = 0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        if (u != v && pred[u] && !ranks[u].is_finite() && labels[u] == labels[v]) {
            ++count;
        }
    }
    return count;
}

std::size_t max_backward_set_size(const Digraph& g, std::span<const Label> labels, std::span<const Rank> ranks) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> stamp(n, 0);
    std::size_t best = 0;
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < n; ++v) {
        const std::uint32_t mark = v + 1;
        stamp[v] = mark;
        stack.assign(1, v);
        std::size_t count = 0;
        while (!stack.empty()) {
            const VertexId x = stack.back();
            stack.pop_back();
            for (VertexId y : g.in(x)) {
                if (stamp[y] != mark && labels[y] == labels[v]) {
                    stamp[y] = mark;
                    stack.push_back(y);
                    count += ranks[y].is_finite() ? 0 : 1;
                }
            }
        }
        best = std::max(best, count);
    }
    return best;
}

std::vector<VertexId> same_label_preds(const Digraph& g, std::span<const Label> labels, VertexId v) {
    std::vector<VertexId> out;
    for (VertexId u : g.in(v)) {
        if (labels[u] == labels[v]) {
            out.push_back(u);
        }
    }
    return out;
}

std::size_t ranked_predecessor_count(const Digraph& g, std::span<const Rank> ranks, VertexId v) {
    const std::vector<char> pred = predecessors(g, v);
    std::size_t count = 0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        count += (pred[u] && ranks[u].is_finite()) ? 1 : 0;
    }
    return count;
}

} // namespace icd::oracle
