#include "icd/label.hpp"

#include <algorithm>
#include <stdexcept>

namespace icd {

Label::Label(std::vector<LabelEntry> entries) : entries_{std::move(entries)} {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!entries_[i].rank.is_finite()) {
            throw std::invalid_argument("label entry with infinite rank");
        }
        if (i > 0 && !(entries_[i - 1].rank < entries_[i].rank)) {
            throw std::invalid_argument("label ranks must strictly increase");
        }
    }
}

bool Label::contains(VertexId v) const {
    return std::ranges::any_of(entries_, [v](const LabelEntry& e) { return e.vertex == v; });
}

void Label::push_back(LabelEntry e) {
    if (!e.rank.is_finite() || (!entries_.empty() && !(entries_.back().rank < e.rank))) {
        throw std::invalid_argument("label ranks must strictly increase");
    }
    entries_.push_back(e);
}

std::vector<Rank> rank_sequence(const Label& label) {
    std::vector<Rank> out;
    out.reserve(label.size() + 1);
    for (const auto& e : label.entries()) {
        out.push_back(e.rank);
    }
    out.push_back(Rank::infinity());
    return out;
}

Ordering cmp_lex(const Label& a, const Label& b) {
    const std::size_t common = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < common; ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.rank != y.rank) {
            return x.rank < y.rank ? Ordering::LexLess : Ordering::LexGreater;
        }
        if (x.vertex != y.vertex) {
            return x.vertex < y.vertex ? Ordering::LexLess : Ordering::LexGreater;
        }
    }
    if (a.size() == b.size()) {
        return Ordering::LexEqual;
    }
    // The shorter label meets the trailing infinity first.
    return a.size() > b.size() ? Ordering::LexLess : Ordering::LexGreater;
}

Label lcp(const Label& a, const Label& b) {
    Label out;
    const std::size_t common = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < common && a[i] == b[i]; ++i) {
        out.push_back(a[i]);
    }
    return out;
}

Label truncate_below(const Label& label, Rank bound) {
    Label out;
    for (const auto& e : label.entries()) {
        if (!(e.rank < bound)) {
            break;
        }
        out.push_back(e);
    }
    return out;
}

Label merge_for_arc(const Label& src, const Label& dst_label, VertexId dst_vertex, Rank dst_rank) {
    if (src.contains(dst_vertex)) {
        throw std::invalid_argument("merge_for_arc: destination occurs in source label (cycle)");
    }
    if (cmp_lex(src, dst_label) != Ordering::LexLess) {
        return dst_label;
    }
    // LCP(src, dst) || zeta' || dst_vertex, zeta' being the run of the
    // remaining src entries ranked below dst_rank.
    Label merged = lcp(src, dst_label);
    for (std::size_t i = merged.size(); i < src.size() && src[i].rank < dst_rank; ++i) {
        merged.push_back(src[i]);
    }
    if (dst_rank.is_finite()) {
        merged.push_back({dst_vertex, dst_rank});
    }
    return merged;
}

std::string render(const Label& label) {
    std::string out;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i > 0) {
            out += '|';
        }
        out += 'v';
        out += std::to_string(label[i].vertex);
        out += '#';
        out += std::to_string(label[i].rank.value());
    }
    return out;
}

} // namespace icd
