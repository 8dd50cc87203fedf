#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "icd/label.hpp"

namespace icd {

// The new arc was consistent with the current labels; nothing changed.
struct AlreadyOrdered {
    friend bool operator==(const AlreadyOrdered&, const AlreadyOrdered&) = default;
};

struct LabelsUpdated {
    std::size_t change_count = 0;
    friend bool operator==(const LabelsUpdated&, const LabelsUpdated&) = default;
};

// witness is a closed walk v ... u v ending with the inserted arc (u, v).
struct CycleDetected {
    std::vector<VertexId> witness;
    friend bool operator==(const CycleDetected&, const CycleDetected&) = default;
};

using InsertOutcome = std::variant<AlreadyOrdered, LabelsUpdated, CycleDetected>;

enum class OutcomeKind { AlreadyOrdered, LabelsUpdated, CycleDetected };

inline OutcomeKind kind_of(const InsertOutcome& o) { return static_cast<OutcomeKind>(o.index()); }

inline std::string_view outcome_name(OutcomeKind k) {
    switch (k) {
    case OutcomeKind::AlreadyOrdered: return "AlreadyOrdered";
    case OutcomeKind::LabelsUpdated: return "LabelsUpdated";
    case OutcomeKind::CycleDetected: return "CycleDetected";
    }
    return "?";
}

enum class MessageKind { BackwardProbe, ForwardProbe, Cycle, NoCycle, Update, LabelReply };

std::string_view message_kind_name(MessageKind kind);

// Message tallies by kind. init_reply counts the implicit label reply that
// seeds a neighbor cache when an arc is inserted; it is reported separately
// and excluded from total().
struct MessageCounters {
    std::uint64_t backward = 0;
    std::uint64_t forward = 0;
    std::uint64_t cycle = 0;
    std::uint64_t nocycle = 0;
    std::uint64_t update = 0;
    std::uint64_t reply = 0;
    std::uint64_t init_reply = 0;

    [[nodiscard]] std::uint64_t total() const { return backward + forward + cycle + nocycle + update + reply; }
    void count(MessageKind kind);

    MessageCounters& operator+=(const MessageCounters& o);
    friend MessageCounters operator-(MessageCounters a, const MessageCounters& b);
    friend bool operator==(const MessageCounters&, const MessageCounters&) = default;
};

} // namespace icd
