#include "icd/outcome.hpp"

namespace icd {

std::string_view message_kind_name(MessageKind kind) {
    switch (kind) {
    case MessageKind::BackwardProbe: return "backward";
    case MessageKind::ForwardProbe: return "forward";
    case MessageKind::Cycle: return "cycle";
    case MessageKind::NoCycle: return "nocycle";
    case MessageKind::Update: return "update";
    case MessageKind::LabelReply: return "reply";
    }
    return "?";
}

void MessageCounters::count(MessageKind kind) {
    switch (kind) {
    case MessageKind::BackwardProbe: ++backward; break;
    case MessageKind::ForwardProbe: ++forward; break;
    case MessageKind::Cycle: ++cycle; break;
    case MessageKind::NoCycle: ++nocycle; break;
    case MessageKind::Update: ++update; break;
    case MessageKind::LabelReply: ++reply; break;
    }
}

MessageCounters& MessageCounters::operator+=(const MessageCounters& o) {
    backward += o.backward;
    forward += o.forward;
    cycle += o.cycle;
    nocycle += o.nocycle;
    update += o.update;
    reply += o.reply;
    init_reply += o.init_reply;
    return *this;
}

MessageCounters operator-(MessageCounters a, const MessageCounters& b) {
    a.backward -= b.backward;
    a.forward -= b.forward;
    a.cycle -= b.cycle;
    a.nocycle -= b.nocycle;
    a.update -= b.update;
    a.reply -= b.reply;
    a.init_reply -= b.init_reply;
    return a;
}

} // namespace icd
