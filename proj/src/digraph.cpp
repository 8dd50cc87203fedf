#include "icd/digraph.hpp"

#include <stdexcept>
#include <string>

namespace icd {

VertexId Digraph::add_vertex() {
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<VertexId>(out_.size() - 1);
}

void Digraph::check_vertex(VertexId v) const {
    if (v >= out_.size()) {
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    }
}

ArcId Digraph::add_arc(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    const auto id = static_cast<ArcId>(arcs_.size());
    if (!index_.emplace(key(u, v), id).second) {
        throw std::invalid_argument("duplicate arc");
    }
    arcs_.push_back({u, v});
    out_[u].push_back(v);
    in_[v].push_back(u);
    return id;
}

ArcId Digraph::arc_id(VertexId u, VertexId v) const {
    const auto it = index_.find(key(u, v));
    if (it == index_.end()) {
        throw std::out_of_range("no such arc");
    }
    return it->second;
}

} // namespace icd
