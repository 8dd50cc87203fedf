#include "icd/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace icd {

ForwardResult forward_search(const Digraph& g, std::span<const Label> labels, VertexId v, const Label& label_u,
                             const BackwardResult& backward) {
    ForwardResult out;
    out.parent.emplace(v, v);
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (VertexId w : g.out(x)) {
            ++out.probes_sent;
            if (backward.was_probed(w)) {
                out.parent.insert_or_assign(w, x);
                out.hit = w;
                return out;
            }
            if (out.parent.contains(w)) {
                continue;
            }
            if (cmp_lex(label_u, labels[w]) == Ordering::LexLess) {
                out.parent.emplace(w, x);
                stack.push_back(w);
            }
        }
    }
    return out;
}

namespace {

// Appends the walk from `from` to `to` following parent pointers (exclusive of `from`).
void follow(const std::unordered_map<VertexId, VertexId>& parent, VertexId from, VertexId to,
            std::vector<VertexId>& walk) {
    VertexId x = from;
    std::size_t steps = 0;
    while (x != to) {
        const auto it = parent.find(x);
        if (it == parent.end() || it->second == x || ++steps > parent.size()) {
            throw std::logic_error("witness splicing failed");
        }
        x = it->second;
        walk.push_back(x);
    }
}

} // namespace

std::vector<VertexId> witness_cycle(const BackwardResult& backward, const ForwardResult* forward, VertexId meet,
                                    VertexId u, VertexId v) {
    std::vector<VertexId> walk;
    if (u == v) {
        return {u, u};
    }
    if (backward.found) {
        walk.push_back(v);
        follow(backward.parent, v, u, walk);
        walk.push_back(v);
        return walk;
    }
    if (forward == nullptr) {
        throw std::logic_error("witness splicing failed: no forward tree");
    }
    std::vector<VertexId> head{meet};
    follow(forward->parent, meet, v, head);
    std::ranges::reverse(head);
    walk = std::move(head);
    follow(backward.parent, meet, u, walk);
    walk.push_back(v);
    return walk;
}

} // namespace icd
