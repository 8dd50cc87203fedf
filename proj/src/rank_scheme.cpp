#include "icd/rank_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace icd {

namespace {

constexpr std::uint64_t kRankUniverse = std::uint64_t{1} << 63;

void check_q(double q, bool allow_zero) {
    if (!(q <= 1.0) || q < 0.0 || (!allow_zero && q == 0.0) || std::isnan(q)) {
        throw std::invalid_argument("ranking probability q out of range");
    }
}

} // namespace

RankAssignment::RankAssignment(RankMode mode, double q, std::uint64_t seed)
    : mode_{mode}, q_{q}, seed_{seed}, rng_{seed} {}

Rank RankAssignment::draw_rank() {
    std::uniform_int_distribution<std::uint64_t> dist(1, kRankUniverse);
    for (;;) {
        const std::uint64_t r = dist(rng_);
        if (used_.insert(r).second) {
            return Rank{r};
        }
    }
}

RankAssignment RankAssignment::vertex_scheme(std::size_t n, double q, std::uint64_t seed) {
    check_q(q, false);
    RankAssignment out(RankMode::VertexQ, q, seed);
    out.vertex_rank_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.add_vertex();
    }
    return out;
}

RankAssignment RankAssignment::full(std::size_t n, std::uint64_t seed) {
    RankAssignment out(RankMode::Full, 1.0, seed);
    out.vertex_rank_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.add_vertex();
    }
    return out;
}

RankAssignment RankAssignment::arc_scheme(std::size_t n, double q, std::uint64_t seed) {
    check_q(q, true);
    RankAssignment out(RankMode::ArcQ, q, seed);
    out.vertex_rank_.assign(n, Rank::infinity());
    return out;
}

RankAssignment RankAssignment::from_ranks(std::vector<Rank> ranks) {
    RankAssignment out(RankMode::VertexQ, 1.0, 0);
    bool all_finite = true;
    std::size_t finite = 0;
    for (Rank r : ranks) {
        if (!r.is_finite()) {
            all_finite = false;
            continue;
        }
        ++finite;
        if (r.value() == 0 || !out.used_.insert(r.value()).second) {
            throw std::invalid_argument("explicit ranks must be positive and distinct");
        }
    }
    out.mode_ = all_finite ? RankMode::Full : RankMode::VertexQ;
    out.q_ = ranks.empty() ? 1.0 : static_cast<double>(finite) / static_cast<double>(ranks.size());
    if (out.q_ == 0.0) {
        out.q_ = 1.0;
    }
    out.vertex_rank_ = std::move(ranks);
    return out;
}

std::size_t RankAssignment::ranked_count() const {
    std::size_t count = 0;
    for (Rank r : vertex_rank_) {
        count += r.is_finite() ? 1 : 0;
    }
    return count;
}

VertexId RankAssignment::add_vertex() {
    const auto id = static_cast<VertexId>(vertex_rank_.size());
    Rank r = Rank::infinity();
    switch (mode_) {
    case RankMode::Full:
        r = draw_rank();
        break;
    case RankMode::VertexQ:
        if (std::bernoulli_distribution(q_)(rng_)) {
            r = draw_rank();
        }
        break;
    case RankMode::ArcQ:
        break;
    }
    vertex_rank_.push_back(r);
    return id;
}

ArcRankResult RankAssignment::arc_rank_on_insert(ArcId arc, VertexId head) {
    if (mode_ != RankMode::ArcQ) {
        throw std::logic_error("arc ranks require ArcQ mode");
    }
    std::optional<Rank> drawn;
    if (q_ > 0.0 && std::bernoulli_distribution(q_)(rng_)) {
        drawn = draw_rank();
    }
    return apply_arc_rank(arc, head, drawn);
}

ArcRankResult RankAssignment::assign_arc_rank(ArcId arc, VertexId head, std::optional<Rank> rank) {
    if (mode_ != RankMode::ArcQ) {
        throw std::logic_error("arc ranks require ArcQ mode");
    }
    if (rank && (!rank->is_finite() || rank->value() == 0 || !used_.insert(rank->value()).second)) {
        throw std::invalid_argument("arc rank must be finite, positive and unused");
    }
    return apply_arc_rank(arc, head, rank);
}

ArcRankResult RankAssignment::apply_arc_rank(ArcId arc, VertexId head, std::optional<Rank> rank) {
    if (arc != arc_rank_.size()) {
        throw std::invalid_argument("arcs must be ranked in insertion order");
    }
    arc_rank_.push_back(rank.value_or(Rank::infinity()));
    ArcRankResult out{rank, false};
    Rank& current = vertex_rank_.at(head);
    if (rank && *rank < current) {
        current = *rank;
        out.rank_lowered = true;
    }
    return out;
}

std::optional<Rank> RankAssignment::arc_rank(ArcId arc) const {
    const Rank r = arc_rank_.at(arc);
    if (!r.is_finite()) {
        return std::nullopt;
    }
    return r;
}

double preset_q(QPreset preset, std::size_t n, std::size_t m) {
    if (n < 2) {
        throw std::invalid_argument("preset_q needs n >= 2");
    }
    const double dn = static_cast<double>(n);
    switch (preset) {
    case QPreset::Sparse32:
        return 1.0 / std::sqrt(dn);
    case QPreset::Balanced23:
        return std::min(1.0, std::cbrt(std::log(dn) / dn));
    case QPreset::FullRank:
        return 1.0;
    case QPreset::MsgVertex:
        return std::min(1.0, std::sqrt(std::log(dn) / dn));
    case QPreset::MsgArc:
        return 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(m, 1)));
    }
    throw std::invalid_argument("unknown preset");
}

std::optional<QPreset> parse_preset(std::string_view name) {
    if (name == "sparse32") return QPreset::Sparse32;
    if (name == "balanced23") return QPreset::Balanced23;
    if (name == "full") return QPreset::FullRank;
    if (name == "msg-vertex") return QPreset::MsgVertex;
    if (name == "msg-arc") return QPreset::MsgArc;
    return std::nullopt;
}

std::string_view preset_name(QPreset preset) {
    switch (preset) {
    case QPreset::Sparse32: return "sparse32";
    case QPreset::Balanced23: return "balanced23";
    case QPreset::FullRank: return "full";
    case QPreset::MsgVertex: return "msg-vertex";
    case QPreset::MsgArc: return "msg-arc";
    }
    return "?";
}

std::string_view mode_name(RankMode mode) {
    switch (mode) {
    case RankMode::VertexQ: return "vertex";
    case RankMode::Full: return "full";
    case RankMode::ArcQ: return "arc";
    }
    return "?";
}

} // namespace icd
