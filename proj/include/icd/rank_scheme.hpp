#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "icd/label.hpp"

namespace icd {

enum class RankMode { VertexQ, Full, ArcQ };

// Named choices of the ranking probability q.
enum class QPreset {
    Sparse32,   // 1/sqrt(n)
    Balanced23, // cbrt(ln n / n)
    FullRank,   // 1
    MsgVertex,  // sqrt(ln n / n)
    MsgArc,     // 1/sqrt(max(m, 1))
};

struct ArcRankResult {
    std::optional<Rank> arc_rank;
    bool rank_lowered = false;
};

// Which vertices (or arcs) are ranked and with what rank.
//
// Finite ranks are drawn uniformly from [1, 2^63] and redrawn on collision,
// so they are pairwise distinct and their relative order is a uniformly
// random permutation. In ArcQ mode a vertex's rank is the minimum rank of
// its ranked incoming arcs.
class RankAssignment {
  public:
    // Each vertex ranked independently with probability q in (0, 1].
    static RankAssignment vertex_scheme(std::size_t n, double q, std::uint64_t seed);
    // Every vertex ranked.
    static RankAssignment full(std::size_t n, std::uint64_t seed);
    // No vertex ranked up front; each inserted arc is ranked with probability q in [0, 1].
    static RankAssignment arc_scheme(std::size_t n, double q, std::uint64_t seed);
    // Explicit vertex ranks (VertexQ mode, or Full when all are finite).
    static RankAssignment from_ranks(std::vector<Rank> ranks);

    [[nodiscard]] RankMode mode() const { return mode_; }
    [[nodiscard]] double q() const { return q_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    [[nodiscard]] std::size_t vertex_count() const { return vertex_rank_.size(); }
    [[nodiscard]] Rank rank(VertexId v) const { return vertex_rank_.at(v); }
    [[nodiscard]] bool is_ranked(VertexId v) const { return rank(v).is_finite(); }
    [[nodiscard]] std::span<const Rank> vertex_ranks() const { return vertex_rank_; }
    [[nodiscard]] std::size_t ranked_count() const;

    // Grows the vertex set by one, ranking the new vertex per the scheme.
    VertexId add_vertex();

    // ArcQ only: ranks arc `arc` (head `head`) with probability q and applies
    // the min rule to the head.
    ArcRankResult arc_rank_on_insert(ArcId arc, VertexId head);
    // ArcQ only: same, with the arc's rank given instead of drawn.
    ArcRankResult assign_arc_rank(ArcId arc, VertexId head, std::optional<Rank> rank);

    [[nodiscard]] std::optional<Rank> arc_rank(ArcId arc) const;
    [[nodiscard]] std::size_t arc_count() const { return arc_rank_.size(); }

  private:
    RankAssignment(RankMode mode, double q, std::uint64_t seed);
    Rank draw_rank();
    ArcRankResult apply_arc_rank(ArcId arc, VertexId head, std::optional<Rank> rank);

    RankMode mode_;
    double q_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    std::unordered_set<std::uint64_t> used_;
    std::vector<Rank> vertex_rank_;
    std::vector<Rank> arc_rank_; // infinity = unranked arc
};

// q for a preset; n >= 2 or std::invalid_argument.
double preset_q(QPreset preset, std::size_t n, std::size_t m);

// CLI names: sparse32, balanced23, full, msg-vertex, msg-arc.
std::optional<QPreset> parse_preset(std::string_view name);
std::string_view preset_name(QPreset preset);

std::string_view mode_name(RankMode mode);

} // namespace icd
