#pragma once

// Cycle detection searches shared by the sequential engines.

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "icd/digraph.hpp"
#include "icd/label.hpp"

namespace icd {

struct BackwardResult {
    bool found = false;
    // Every vertex that received a probe, mapped to the out-neighbor that
    // first probed it. The initiator maps to itself.
    std::unordered_map<VertexId, VertexId> parent;
    std::vector<VertexId> probed; // discovery order
    std::size_t probes_sent = 0;

    [[nodiscard]] bool was_probed(VertexId w) const { return parent.contains(w); }
};

struct ForwardResult {
    std::optional<VertexId> hit;
    // Propagating vertices (and the hit) mapped to the in-neighbor that
    // first reached them. The start vertex maps to itself.
    std::unordered_map<VertexId, VertexId> parent;
    std::size_t probes_sent = 0;
};

/// Backward probe from u hunting for v.
///
/// Every in-neighbor of a propagating vertex is probed and recorded. A probed
/// vertex w propagates further iff w != v, it is seen for the first time and
/// `same_label(sender, w)` holds, i.e. w carries the initiator's label.
template <class SameLabel>
BackwardResult backward_search(const Digraph& g, VertexId u, VertexId v, SameLabel&& same_label) {
    BackwardResult out;
    out.parent.emplace(u, u);
    out.probed.push_back(u);
    std::vector<VertexId> stack{u};
    while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (VertexId w : g.in(x)) {
            ++out.probes_sent;
            const bool first = out.parent.emplace(w, x).second;
            if (first) {
                out.probed.push_back(w);
            }
            if (w == v) {
                out.parent[w] = x;
                out.found = true;
                return out;
            }
            if (first && same_label(x, w)) {
                stack.push_back(w);
            }
        }
    }
    return out;
}

/// Forward probe from v carrying label_u. Any vertex probed by `backward` is
/// a hit; otherwise w propagates iff label_u is lex-smaller than labels[w]
/// and w is seen for the first time.
ForwardResult forward_search(const Digraph& g, std::span<const Label> labels, VertexId v, const Label& label_u,
                             const BackwardResult& backward);

/// Closed walk v ... u v. With backward.found the walk follows backward
/// parents from v; otherwise forward parents from v to meet, then backward
/// parents from meet to u. Throws std::logic_error if the pointers do not
/// splice into a walk.
std::vector<VertexId> witness_cycle(const BackwardResult& backward, const ForwardResult* forward, VertexId meet,
                                    VertexId u, VertexId v);

} // namespace icd
