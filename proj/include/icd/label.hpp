#pragma once

// Recursive vertex labels and the lexicographic order that encodes the
// weak topological order of a DAG.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace icd {

using VertexId = std::uint32_t;
using ArcId = std::uint32_t;

// Finite ranks live in [1, 2^63]. The default-constructed rank is the
// infinity sentinel, which compares above every finite rank.
class Rank {
  public:
    constexpr Rank() = default;
    constexpr explicit Rank(std::uint64_t value) : value_{value} {}

    static constexpr Rank infinity() { return Rank{}; }

    [[nodiscard]] constexpr bool is_finite() const { return value_ != kInfinity; }
    [[nodiscard]] constexpr std::uint64_t value() const { return value_; }

    friend constexpr auto operator<=>(Rank, Rank) = default;

  private:
    static constexpr std::uint64_t kInfinity = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t value_ = kInfinity;
};

struct LabelEntry {
    VertexId vertex;
    Rank rank;

    friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
};

// A label is a sequence of ranked vertices with strictly increasing ranks.
class Label {
  public:
    Label() = default;
    // Throws std::invalid_argument unless ranks are finite and strictly increasing.
    explicit Label(std::vector<LabelEntry> entries);
    Label(std::initializer_list<LabelEntry> entries) : Label(std::vector<LabelEntry>(entries)) {}

    static Label singleton(VertexId v, Rank r) { return Label{{v, r}}; }

    [[nodiscard]] std::span<const LabelEntry> entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] const LabelEntry& operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] const LabelEntry& back() const { return entries_.back(); }
    [[nodiscard]] bool contains(VertexId v) const;

    // Appends an entry; its rank must exceed the current last rank.
    void push_back(LabelEntry e);

    friend bool operator==(const Label&, const Label&) = default;

  private:
    std::vector<LabelEntry> entries_;
};

enum class Ordering { LexLess, LexEqual, LexGreater };

// Entry ranks in order followed by a single trailing infinity.
std::vector<Rank> rank_sequence(const Label& label);

// Lexicographic comparison of rank sequences (with the trailing infinity).
// Entries with equal rank are ordered by vertex id so that the order stays
// total on arbitrary inputs; LexEqual holds only for identical sequences.
Ordering cmp_lex(const Label& a, const Label& b);

inline Ordering reverse(Ordering o) {
    switch (o) {
    case Ordering::LexLess: return Ordering::LexGreater;
    case Ordering::LexGreater: return Ordering::LexLess;
    default: return Ordering::LexEqual;
    }
}

// Longest common prefix by exact (vertex, rank) equality.
Label lcp(const Label& a, const Label& b);

// Longest prefix whose ranks are all strictly below `bound`.
Label truncate_below(const Label& label, Rank bound);

/// New label of the head y of an arc (x, y) after x announces `src`.
///
/// Result is LCP(src, dst) followed by the run of src entries ranked below
/// `dst_rank`, then (dst_vertex, dst_rank) if that rank is finite. When src is
/// not lex-smaller than dst the destination label already dominates and is
/// returned unchanged. Throws std::invalid_argument if dst_vertex occurs in
/// src, which means the arc closes a cycle.
Label merge_for_arc(const Label& src, const Label& dst_label, VertexId dst_vertex, Rank dst_rank);

// `v17#42|v3#99`; empty string for the empty label.
std::string render(const Label& label);

} // namespace icd
