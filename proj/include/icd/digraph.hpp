#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "icd/label.hpp"

namespace icd {

struct Arc {
    VertexId tail;
    VertexId head;

    friend bool operator==(const Arc&, const Arc&) = default;
};

// Insert-only directed graph with in- and out-adjacency. Arc ids follow
// insertion order; parallel arcs are rejected, self-loops are stored.
class Digraph {
  public:
    Digraph() = default;
    explicit Digraph(std::size_t n) : out_(n), in_(n) {}

    VertexId add_vertex();
    ArcId add_arc(VertexId u, VertexId v);

    [[nodiscard]] std::size_t vertex_count() const { return out_.size(); }
    [[nodiscard]] std::size_t arc_count() const { return arcs_.size(); }
    [[nodiscard]] bool has_arc(VertexId u, VertexId v) const { return index_.contains(key(u, v)); }
    [[nodiscard]] ArcId arc_id(VertexId u, VertexId v) const;

    [[nodiscard]] std::span<const VertexId> out(VertexId u) const { return out_.at(u); }
    [[nodiscard]] std::span<const VertexId> in(VertexId v) const { return in_.at(v); }
    [[nodiscard]] std::span<const Arc> arcs() const { return arcs_; }

    void check_vertex(VertexId v) const;

  private:
    static std::uint64_t key(VertexId u, VertexId v) { return (std::uint64_t{u} << 32) | v; }

    std::vector<std::vector<VertexId>> out_;
    std::vector<std::vector<VertexId>> in_;
    std::vector<Arc> arcs_;
    std::unordered_map<std::uint64_t, ArcId> index_;
};

} // namespace icd
