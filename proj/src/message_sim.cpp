#include "icd/message_sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace icd {

std::string_view schedule_name(ScheduleKind kind) {
    switch (kind) {
    case ScheduleKind::Fifo: return "fifo";
    case ScheduleKind::Lifo: return "lifo";
    case ScheduleKind::RandomSeeded: return "random";
    }
    return "?";
}

MessageSimulator::MessageSimulator(RankAssignment ranks, Protocol protocol, SchedulePolicy policy)
    : ranks_{std::move(ranks)}, protocol_{protocol}, policy_{policy}, schedule_rng_{policy.seed},
      graph_{ranks_.vertex_count()} {
    if (protocol_ == Protocol::Queue && ranks_.mode() == RankMode::ArcQ) {
        throw std::invalid_argument("queue protocol needs a vertex ranking");
    }
    const std::size_t n = ranks_.vertex_count();
    labels_.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        const Rank r = ranks_.rank(v);
        labels_.push_back(r.is_finite() ? Label::singleton(v, r) : Label{});
    }
    same_label_preds_.resize(n);
    caches_.resize(n);
    change_counter_.assign(n, 0);
}

void MessageSimulator::require_running() const {
    if (halted_) {
        throw std::logic_error("engine halted after cycle");
    }
}

void MessageSimulator::send(MessageKind kind, VertexId src, VertexId dst, Label label) {
    ArcId via = 0;
    const bool along = kind == MessageKind::ForwardProbe || kind == MessageKind::Update ||
                       (phase_ == Phase::Backward && (kind == MessageKind::Cycle || kind == MessageKind::NoCycle));
    via = along ? graph_.arc_id(src, dst) : graph_.arc_id(dst, src);
    counters_.count(kind);
    network_.push_back(Message{kind, src, dst, via, std::move(label)});
}

void MessageSimulator::run_network() {
    while (!network_.empty()) {
        Message m;
        switch (policy_.kind) {
        case ScheduleKind::Fifo:
            m = std::move(network_.front());
            network_.pop_front();
            break;
        case ScheduleKind::Lifo:
            m = std::move(network_.back());
            network_.pop_back();
            break;
        case ScheduleKind::RandomSeeded: {
            std::uniform_int_distribution<std::size_t> pick(0, network_.size() - 1);
            const std::size_t i = pick(schedule_rng_);
            std::swap(network_[i], network_.back());
            m = std::move(network_.back());
            network_.pop_back();
            break;
        }
        }
        if (trace_ != nullptr) {
            *trace_ << "seq=" << seq_ << " kind=" << message_kind_name(m.kind) << " src=" << m.src
                    << " dst=" << m.dst << " label=" << render(m.label) << '\n';
        }
        ++seq_;
        deliver(m);
        if (backward_.cycle || forward_.cycle) {
            // The initiator knows; whatever is still in flight is dropped.
            network_.clear();
        }
    }
}

void MessageSimulator::deliver(const Message& m) {
    switch (phase_) {
    case Phase::Backward:
    case Phase::Forward: {
        const bool backward = phase_ == Phase::Backward;
        SearchState& search = backward ? backward_ : forward_;
        if (m.kind == MessageKind::BackwardProbe || m.kind == MessageKind::ForwardProbe) {
            deliver_probe(m, search, backward);
        } else {
            deliver_reply(m, search, backward);
        }
        break;
    }
    case Phase::Update:
        if (m.kind == MessageKind::Update) {
            deliver_update(m);
        } else if (m.kind == MessageKind::LabelReply) {
            caches_[m.dst].put(m.src, m.label);
        }
        break;
    }
}

void MessageSimulator::deliver_probe(const Message& m, SearchState& search, bool backward) {
    const VertexId w = m.dst;
    const VertexId from = m.src;
    const MessageKind probe = backward ? MessageKind::BackwardProbe : MessageKind::ForwardProbe;
    search.parent.try_emplace(w, from);

    const bool hit = backward ? w == target_ : backward_.parent.contains(w);
    if (hit) {
        send(MessageKind::Cycle, w, from);
        return;
    }
    if (auto it = search.waiting.find(w); it != search.waiting.end()) {
        ProbeState& st = it->second;
        if (st.cycle) {
            return;
        }
        if (st.resolved) {
            send(MessageKind::NoCycle, w, from);
        } else {
            st.requesters.push_back(from);
        }
        return;
    }
    const auto next = backward ? graph_.in(w) : graph_.out(w);
    const bool propagates = backward ? labels_[w] == probe_label_
                                     : cmp_lex(probe_label_, labels_[w]) == Ordering::LexLess;
    if (!propagates || next.empty()) {
        send(MessageKind::NoCycle, w, from);
        return;
    }
    ProbeState& st = search.waiting[w];
    st.pending = next.size();
    st.requesters.push_back(from);
    for (VertexId x : next) {
        send(probe, w, x, probe_label_);
    }
}

void MessageSimulator::deliver_reply(const Message& m, SearchState& search, bool /*backward*/) {
    const VertexId x = m.dst;
    if (m.kind == MessageKind::Cycle) {
        search.cycle_from.try_emplace(x, m.src);
        if (x == search.root) {
            search.cycle = true;
            return;
        }
        ProbeState& st = search.waiting.at(x);
        if (!st.cycle) {
            st.cycle = true;
            send(MessageKind::Cycle, x, st.requesters.front());
        }
        return;
    }
    if (x == search.root) {
        --search.root_pending;
        return;
    }
    ProbeState& st = search.waiting.at(x);
    if (st.cycle || st.pending == 0) {
        return;
    }
    if (--st.pending == 0) {
        st.resolved = true;
        for (VertexId r : st.requesters) {
            send(MessageKind::NoCycle, x, r);
        }
    }
}

void MessageSimulator::set_label(VertexId w, Label label) {
    labels_[w] = std::move(label);
    ++change_counter_[w];
    ++changes_;
    same_label_preds_[w].clear();
}

void MessageSimulator::note_same_label(VertexId from, VertexId to, const Label& carried) {
    auto& preds = same_label_preds_[to];
    if (carried == labels_[to] && std::ranges::find(preds, from) == preds.end()) {
        preds.push_back(from);
    }
}

// w tells its out-neighbors about its (new) label.
void MessageSimulator::announce(VertexId w) {
    if (protocol_ == Protocol::TwoWay) {
        for (VertexId x : graph_.out(w)) {
            send(MessageKind::Update, w, x, labels_[w]);
        }
        return;
    }
    const auto& queue = caches_[w].queue;
    for (auto it = queue.rbegin(); it != queue.rend(); ++it) {
        if (cmp_lex(it->label, labels_[w]) != Ordering::LexGreater) {
            break;
        }
        send(MessageKind::Update, w, it->target, labels_[w]);
    }
}

void MessageSimulator::deliver_update(const Message& m) {
    const VertexId y = m.dst;
    Label merged = merge_for_arc(m.label, labels_[y], y, ranks_.rank(y));
    const bool changed = merged != labels_[y];
    if (changed) {
        set_label(y, std::move(merged));
    }
    note_same_label(m.src, y, m.label);
    if (protocol_ == Protocol::Queue) {
        send(MessageKind::LabelReply, y, m.src, labels_[y]);
    }
    if (changed) {
        announce(y);
    }
}

std::vector<VertexId> MessageSimulator::witness(VertexId u, VertexId v) const {
    std::vector<VertexId> walk;
    auto guard = [](std::size_t steps, std::size_t limit) {
        if (steps > limit) {
            throw std::logic_error("witness splicing failed");
        }
    };
    if (backward_.cycle) {
        // Cycle replies ran v -> ... -> u against the probes.
        VertexId x = u;
        walk.push_back(u);
        std::size_t steps = 0;
        while (x != v) {
            x = backward_.cycle_from.at(x);
            walk.push_back(x);
            guard(++steps, backward_.cycle_from.size());
        }
        std::ranges::reverse(walk);
        walk.push_back(v);
        return walk;
    }
    // v <- ... <- meet along forward cycle replies, then meet ~> u along backward probes.
    VertexId x = v;
    walk.push_back(v);
    std::size_t steps = 0;
    while (forward_.cycle_from.contains(x)) {
        x = forward_.cycle_from.at(x);
        walk.push_back(x);
        guard(++steps, forward_.cycle_from.size());
    }
    steps = 0;
    while (x != u) {
        x = backward_.parent.at(x);
        walk.push_back(x);
        guard(++steps, backward_.parent.size());
    }
    walk.push_back(v);
    return walk;
}

SimInsertResult MessageSimulator::simulate_insert(VertexId u, VertexId v) {
    require_running();
    graph_.check_vertex(u);
    graph_.check_vertex(v);
    const MessageCounters before = counters_;
    changes_ = 0;
    backward_ = SearchState{};
    forward_ = SearchState{};

    if (u == v) {
        graph_.add_arc(u, v);
        halted_ = true;
        return {CycleDetected{{u, u}}, {}};
    }
    if (graph_.has_arc(u, v)) {
        return {AlreadyOrdered{}, {}};
    }

    const Ordering order = cmp_lex(labels_[u], labels_[v]);
    if (order != Ordering::LexGreater) {
        target_ = v;
        probe_label_ = labels_[u];

        phase_ = Phase::Backward;
        backward_.root = u;
        backward_.parent.emplace(u, u);
        backward_.root_pending = graph_.in(u).size();
        for (VertexId w : graph_.in(u)) {
            send(MessageKind::BackwardProbe, u, w, probe_label_);
        }
        run_network();

        if (!backward_.cycle && order == Ordering::LexLess) {
            phase_ = Phase::Forward;
            forward_.root = v;
            forward_.parent.emplace(v, v);
            forward_.root_pending = graph_.out(v).size();
            for (VertexId w : graph_.out(v)) {
                send(MessageKind::ForwardProbe, v, w, probe_label_);
            }
            run_network();
        }
        if (backward_.cycle || forward_.cycle) {
            auto walk = witness(u, v);
            graph_.add_arc(u, v);
            halted_ = true;
            phase_ = Phase::Update;
            return {CycleDetected{std::move(walk)}, counters_ - before};
        }
    }

    phase_ = Phase::Update;
    const ArcId arc = graph_.add_arc(u, v);
    if (ranks_.mode() == RankMode::ArcQ) {
        const ArcRankResult ranked = ranks_.arc_rank_on_insert(arc, v);
        if (ranked.rank_lowered) {
            Label repaired = truncate_below(labels_[v], ranks_.rank(v));
            repaired.push_back({v, ranks_.rank(v)});
            if (repaired != labels_[v]) {
                set_label(v, std::move(repaired));
                announce(v);
            }
        }
    }
    if (protocol_ == Protocol::Queue) {
        caches_[u].put(v, labels_[v]);
        ++counters_.init_reply;
        if (cmp_lex(caches_[u].cached.at(v), labels_[u]) == Ordering::LexGreater) {
            send(MessageKind::Update, u, v, labels_[u]);
        }
    } else {
        switch (cmp_lex(labels_[u], labels_[v])) {
        case Ordering::LexLess:
            send(MessageKind::Update, u, v, labels_[u]);
            break;
        case Ordering::LexEqual:
            note_same_label(u, v, labels_[u]);
            break;
        case Ordering::LexGreater:
            break;
        }
    }
    run_network();

    const MessageCounters delta = counters_ - before;
    if (order == Ordering::LexGreater && changes_ == 0) {
        return {AlreadyOrdered{}, delta};
    }
    return {LabelsUpdated{changes_}, delta};
}

SequenceResult MessageSimulator::run_sequence(std::span<const Arc> arcs) {
    SequenceResult out;
    for (const Arc& a : arcs) {
        SimInsertResult r = simulate_insert(a.tail, a.head);
        out.records.push_back({a, kind_of(r.outcome), r.delta, changes_});
        out.totals += r.delta;
        out.label_changes += changes_;
        const bool stop = kind_of(r.outcome) == OutcomeKind::CycleDetected;
        out.final_outcome = std::move(r.outcome);
        if (stop) {
            break;
        }
    }
    return out;
}

} // namespace icd
