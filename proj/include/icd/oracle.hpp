#pragma once

// Brute-force ground truth for labels and reachability.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "icd/digraph.hpp"
#include "icd/label.hpp"

namespace icd::oracle {

using StaticLabeling = std::vector<Label>;

// Labels straight from the definition: the first entry is the min-rank
// ranked predecessor; each next entry is the min-rank ranked vertex strictly
// after the previous one in S(prev) ∩ P(v). Throws std::invalid_argument on
// a cyclic graph. O(n * k * m).
StaticLabeling static_labels(const Digraph& g, std::span<const Rank> ranks);

// Same labels by one sweep in topological order: l(v) is the lex-minimum,
// over in-neighbors y, of l(y) cut below r(v) with v appended when ranked.
// O(m * k); used where the definitional route is too slow.
StaticLabeling sweep_labels(const Digraph& g, std::span<const Rank> ranks);

// True iff there is a directed path a ~> b (a == b counts).
bool reaches(const Digraph& g, VertexId a, VertexId b);

// All vertices b with a ~> b, as a membership vector.
std::vector<char> successors(const Digraph& g, VertexId a);
std::vector<char> predecessors(const Digraph& g, VertexId b);

bool is_acyclic(const Digraph& g);

// Ordered pairs (u, v) with l(u) lex-greater than l(v) but v ~> u.
std::vector<std::pair<VertexId, VertexId>> check_no_path_theorem(const Digraph& g, std::span<const Label> labels);

// Unranked predecessors of v other than v that share v's label.
std::size_t backward_set_size(const Digraph& g, std::span<const Label> labels, std::span<const Rank> ranks, VertexId v);

// max over v of backward_set_size. Walks only equal-label in-neighbors,
// which is exact while labels respect the weak order along arcs.
std::size_t max_backward_set_size(const Digraph& g, std::span<const Label> labels, std::span<const Rank> ranks);

// In-neighbors of v whose label equals l(v), recomputed from scratch.
std::vector<VertexId> same_label_preds(const Digraph& g, std::span<const Label> labels, VertexId v);

// Number of ranked vertices in P(v), v included.
std::size_t ranked_predecessor_count(const Digraph& g, std::span<const Rank> ranks, VertexId v);

} // namespace icd::oracle
