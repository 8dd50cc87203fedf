#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "icd/engine.hpp"
#include "icd/generators.hpp"
#include "icd/oracle.hpp"
#include "icd/queue_engine.hpp"

using namespace icd;

namespace {

Label L(std::initializer_list<std::pair<VertexId, std::uint64_t>> entries) {
    std::vector<LabelEntry> e;
    for (auto [v, r] : entries) {
        e.push_back({v, Rank{r}});
    }
    return Label{e};
}

} // namespace

TEST_CASE("queue engine rejects arc ranking") {
    CHECK_THROWS_AS(QueueEngine{RankAssignment::arc_scheme(3, 0.5, 1)}, std::invalid_argument);
}

TEST_CASE("path closes into a cycle") {
    QueueEngine e{RankAssignment::from_ranks({Rank{1}, Rank{2}, Rank{3}})};
    CHECK(kind_of(e.q_insert(0, 1)) == OutcomeKind::LabelsUpdated);
    CHECK(kind_of(e.q_insert(1, 2)) == OutcomeKind::LabelsUpdated);
    CHECK(e.label(2) == L({{0, 1}, {1, 2}, {2, 3}}));
    CHECK(e.q_insert(2, 0) == InsertOutcome{CycleDetected{{0, 1, 2, 0}}});
    CHECK(e.halted());
    CHECK_THROWS_AS(e.q_insert(0, 2), std::logic_error);
}

TEST_CASE("insert fills the cache") {
    QueueEngine e{RankAssignment::from_ranks({Rank{1}, Rank{2}})};
    e.q_insert(0, 1);
    CHECK(e.cache(0).cached.at(1) == e.label(1));
    CHECK(e.counters().init_reply == 1);
    const MessageCounters before = e.counters();
    CHECK(e.q_insert(0, 1) == InsertOutcome{AlreadyOrdered{}});
    CHECK(e.counters() == before);
}

TEST_CASE("q_propagate") {
    SUBCASE("empty queue") {
        QueueEngine e{RankAssignment::from_ranks({Rank{5}})};
        const PropagateResult r = e.q_propagate(0, L({{0, 1}}));
        CHECK(r.messages_sent == 0);
        CHECK(e.label(0) == L({{0, 1}}));
    }
    SUBCASE("two stale entries") {
        QueueEngine e{RankAssignment::from_ranks({Rank{5}, Rank{6}, Rank{7}})};
        e.q_insert(0, 1);
        e.q_insert(0, 2);
        const MessageCounters before = e.counters();
        const PropagateResult r = e.q_propagate(0, L({{0, 1}}));
        const MessageCounters delta = e.counters() - before;
        CHECK(delta.update == 2);
        CHECK(delta.reply == 2);
        CHECK(r.messages_sent == 4);
        CHECK(r.change_count == 3);
        CHECK(e.label(1) == L({{0, 1}, {1, 6}}));
        CHECK(e.cache(0).cached.at(2) == e.label(2));
    }
    SUBCASE("label must drop") {
        QueueEngine e{RankAssignment::from_ranks({Rank{5}})};
        CHECK_THROWS_AS(e.q_propagate(0, L({{0, 9}})), std::invalid_argument);
    }
}

TEST_CASE("queue engine matches the two-way engine") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const ArcSequence seq = seed % 3 == 0 ? with_final_cycle(dense_all(14, seed), seed)
                                              : with_final_cycle(random_dag_order(30, 90, seed), seed);
        const auto ranks = seed % 2 == 0 ? RankAssignment::full(seq.n, seed)
                                         : RankAssignment::vertex_scheme(seq.n, 0.4, seed);
        QueueEngine q{ranks};
        Engine e{ranks};
        for (const Arc& a : seq.arcs) {
            const InsertOutcome qo = q.q_insert(a.tail, a.head);
            const InsertOutcome eo = e.insert(a.tail, a.head);
            CHECK(kind_of(qo) == kind_of(eo));
            if (q.halted()) {
                break;
            }
            CHECK(std::ranges::equal(q.labels(), e.labels()));
            for (const Arc& x : q.graph().arcs()) {
                const Label& cached = q.cache(x.tail).cached.at(x.head);
                // A cache may lag behind, but never below the real label.
                CHECK(cmp_lex(cached, q.label(x.head)) != Ordering::LexLess);
                CHECK(cmp_lex(cached, q.label(x.tail)) != Ordering::LexGreater);
            }
        }
        CHECK(q.halted());
        CHECK(q.futile_repeat_sends() == 0);
        CHECK(q.counters().update == q.counters().reply);
    }
}
