#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "icd/engine.hpp"
#include "icd/generators.hpp"
#include "icd/oracle.hpp"
#include "icd/snapshot.hpp"

using namespace icd;

namespace {

constexpr Rank kInf = Rank::infinity();

Label L(std::initializer_list<std::pair<VertexId, std::uint64_t>> entries) {
    std::vector<LabelEntry> e;
    for (auto [v, r] : entries) {
        e.push_back({v, Rank{r}});
    }
    return Label{e};
}

// 1->2->3->4 with r(1)=1, r(3)=2, as vertices 0..3.
Engine four_vertex_chain() {
    Engine e{RankAssignment::from_ranks({Rank{1}, kInf, Rank{2}, kInf})};
    e.insert(0, 1);
    e.insert(1, 2);
    e.insert(2, 3);
    return e;
}

std::set<VertexId> as_set(std::span<const VertexId> xs) { return {xs.begin(), xs.end()}; }

bool matches_oracle(const Engine& e) {
    return std::ranges::equal(e.labels(), oracle::static_labels(e.graph(), e.ranks().vertex_ranks()));
}

} // namespace

TEST_CASE("new engine labels") {
    CHECK(Engine{RankAssignment::full(0, 1)}.labels().empty());
    Engine e{RankAssignment::from_ranks({Rank{5}, kInf})};
    CHECK(e.label(0) == L({{0, 5}}));
    CHECK(e.label(1).empty());
}

TEST_CASE("add_vertex follows the scheme") {
    Engine e{RankAssignment::vertex_scheme(2, 1.0, 3)};
    const VertexId v = e.add_vertex();
    CHECK(v == 2);
    CHECK(e.label(v) == Label::singleton(v, e.ranks().rank(v)));
    CHECK(e.insert(0, v).index() != 2);
}

TEST_CASE("four-vertex chain") {
    Engine e = four_vertex_chain();
    CHECK(e.label(0) == L({{0, 1}}));
    CHECK(e.label(1) == L({{0, 1}}));
    CHECK(e.label(2) == L({{0, 1}, {2, 2}}));
    CHECK(e.label(3) == L({{0, 1}, {2, 2}}));
    CHECK(matches_oracle(e));

    SUBCASE("searches") {
        const BackwardResult b = e.backward_search(3, 0, e.label(3));
        CHECK_FALSE(b.found);
        CHECK(as_set(b.probed) == std::set<VertexId>{3, 2, 1});
        const ForwardResult f = e.forward_search(0, e.label(3), b);
        REQUIRE(f.hit.has_value());
        CHECK(*f.hit == 1);
    }
    SUBCASE("closing arc") {
        const auto labels_before = std::vector<Label>(e.labels().begin(), e.labels().end());
        const InsertOutcome o = e.insert(3, 0);
        REQUIRE(std::holds_alternative<CycleDetected>(o));
        CHECK(std::get<CycleDetected>(o).witness == std::vector<VertexId>{0, 1, 2, 3, 0});
        CHECK(e.halted());
        CHECK(std::ranges::equal(e.labels(), labels_before));
        CHECK_THROWS_WITH_AS(e.insert(0, 2), "engine halted after cycle", std::logic_error);
    }
}

TEST_CASE("update along a chain prefix") {
    Engine e{RankAssignment::from_ranks({Rank{1}, kInf, Rank{2}, kInf})};
    e.insert(0, 1);
    const InsertOutcome o = e.insert(1, 2);
    CHECK(o == InsertOutcome{LabelsUpdated{1}});
    CHECK(e.label(2) == L({{0, 1}, {2, 2}}));
}

TEST_CASE("two ranked vertices") {
    Engine e{RankAssignment::from_ranks({Rank{1}, Rank{2}})};
    CHECK(e.insert(0, 1) == InsertOutcome{LabelsUpdated{1}});
    CHECK(e.label(1) == L({{0, 1}, {1, 2}}));
    CHECK(cmp_lex(e.label(1), e.label(0)) == Ordering::LexLess);
    const InsertOutcome o = e.insert(1, 0);
    REQUIRE(std::holds_alternative<CycleDetected>(o));
    CHECK(std::get<CycleDetected>(o).witness == std::vector<VertexId>{0, 1, 0});
}

TEST_CASE("trivial inserts") {
    Engine e{RankAssignment::from_ranks({Rank{2}, Rank{1}})};
    SUBCASE("lex-greater tail") {
        CHECK(e.insert(0, 1) == InsertOutcome{AlreadyOrdered{}});
        CHECK(e.graph().has_arc(0, 1));
        CHECK(e.change_count(1) == 0);
    }
    SUBCASE("duplicate arc") {
        e.insert(1, 0);
        CHECK(e.insert(1, 0) == InsertOutcome{AlreadyOrdered{}});
        CHECK(e.graph().arc_count() == 1);
        CHECK(e.update_propagate(1, 0) == 0);
    }
    SUBCASE("self-loop") {
        CHECK(e.insert(1, 1) == InsertOutcome{CycleDetected{{1, 1}}});
        CHECK(e.halted());
    }
}

TEST_CASE("equal-label chain closes in the backward phase") {
    Engine e{RankAssignment::from_ranks({kInf, kInf, kInf})};
    CHECK(e.insert(0, 1) == InsertOutcome{LabelsUpdated{0}});
    e.insert(1, 2);
    CHECK(as_set(e.same_label_preds(2)) == std::set<VertexId>{1});
    const BackwardResult b = e.backward_search(2, 0, e.label(2));
    CHECK(b.found);
    CHECK(e.insert(2, 0) == InsertOutcome{CycleDetected{{0, 1, 2, 0}}});
}

TEST_CASE("backward search from a source") {
    Engine e{RankAssignment::from_ranks({Rank{1}, Rank{2}})};
    const BackwardResult b = e.backward_search(0, 1, e.label(0));
    CHECK_FALSE(b.found);
    CHECK(b.probed == std::vector<VertexId>{0});
    CHECK_FALSE(e.forward_search(1, e.label(0), b).hit);
}

TEST_CASE("forward search on a diamond visits only lex-greater vertices") {
    // 0 -> {1, 2} -> 3, all ranked.
    Engine e{RankAssignment::from_ranks({Rank{3}, Rank{1}, Rank{4}, Rank{2}})};
    e.insert(0, 1);
    e.insert(0, 2);
    e.insert(1, 3);
    e.insert(2, 3);
    const Label probe = L({{1, 1}});
    const ForwardResult f = e.forward_search(0, probe, BackwardResult{});
    CHECK_FALSE(f.hit);
    for (const auto& [w, parent] : f.parent) {
        if (w != 0) {
            CHECK(cmp_lex(probe, e.label(w)) == Ordering::LexLess);
        }
    }
    // Brute force: vertices reachable from 0 through lex-greater vertices.
    std::set<VertexId> expected{0};
    for (VertexId w : {1U, 2U, 3U}) {
        const bool greater = cmp_lex(probe, e.label(w)) == Ordering::LexLess;
        const bool fed = std::ranges::any_of(e.graph().in(w), [&](VertexId x) { return expected.contains(x); });
        if (greater && fed) {
            expected.insert(w);
        }
    }
    std::set<VertexId> visited;
    for (const auto& [w, parent] : f.parent) {
        visited.insert(w);
    }
    CHECK(visited == expected);
}

TEST_CASE("star of ten unranked leaves") {
    std::vector<Rank> ranks(11, kInf);
    ranks[0] = Rank{1};
    Engine e{RankAssignment::from_ranks(ranks)};
    std::size_t changes = 0;
    for (VertexId w = 1; w <= 10; ++w) {
        changes += std::get<LabelsUpdated>(e.insert(0, w)).change_count;
    }
    CHECK(changes == 10);
    CHECK(matches_oracle(e));
}

TEST_CASE("rank repair in arc mode") {
    // s -> a (rank 1), a -> b (rank 9), b -> v (rank 12); c is isolated.
    const VertexId s = 0, a = 1, b = 2, v = 3, c = 4;
    Engine e{RankAssignment::arc_scheme(5, 0.5, 1)};
    e.insert_with_arc_rank(s, a, Rank{1});
    e.insert_with_arc_rank(a, b, Rank{9});
    e.insert_with_arc_rank(b, v, Rank{12});
    REQUIRE(e.label(v) == L({{a, 1}, {b, 9}, {v, 12}}));

    SUBCASE("drop below an inner entry") {
        CHECK(e.insert_with_arc_rank(c, v, Rank{5}) == InsertOutcome{LabelsUpdated{1}});
        CHECK(e.label(v) == L({{a, 1}, {v, 5}}));
    }
    SUBCASE("drop that keeps every other entry") {
        e.insert_with_arc_rank(c, v, Rank{10});
        CHECK(e.label(v) == L({{a, 1}, {b, 9}, {v, 10}}));
    }
    SUBCASE("unranked arc") {
        CHECK(e.insert_with_arc_rank(c, v, std::nullopt) == InsertOutcome{AlreadyOrdered{}});
    }
    CHECK(matches_oracle(e));
}

TEST_CASE("unranked vertex gains a rank") {
    Engine e{RankAssignment::arc_scheme(2, 0.5, 1)};
    e.insert_with_arc_rank(0, 1, Rank{7});
    CHECK(e.label(1) == L({{1, 7}}));
    Engine vertex_mode{RankAssignment::full(2, 1)};
    CHECK_THROWS_AS(vertex_mode.insert_with_arc_rank(0, 1, Rank{3}), std::logic_error);
}

TEST_CASE("repair propagates downstream") {
    Engine e{RankAssignment::arc_scheme(4, 0.5, 1)};
    e.insert_with_arc_rank(0, 1, Rank{20});
    e.insert_with_arc_rank(1, 2, std::nullopt);
    e.insert_with_arc_rank(2, 3, Rank{30});
    e.insert_with_arc_rank(3, 1, std::nullopt); // closes 1 -> 2 -> 3 -> 1
    CHECK(e.halted());

    Engine f{RankAssignment::arc_scheme(4, 0.5, 1)};
    f.insert_with_arc_rank(0, 1, Rank{20});
    f.insert_with_arc_rank(1, 2, std::nullopt);
    f.insert_with_arc_rank(2, 3, Rank{30});
    const std::size_t before = f.change_count(3);
    f.insert_with_arc_rank(0, 2, Rank{5}); // r(2) drops from infinity to 5
    CHECK(f.label(2) == L({{2, 5}}));
    CHECK(f.change_count(3) > before);
    CHECK(matches_oracle(f));
}

TEST_CASE("random sequences agree with the oracle under every policy") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const ArcSequence seq = with_final_cycle(random_dag_order(24, 50, seed), seed);
        const bool arc_mode = seed % 2 == 1;
        auto ranks = [&] {
            return arc_mode ? RankAssignment::arc_scheme(seq.n, 0.3, seed)
                            : RankAssignment::vertex_scheme(seq.n, 0.3, seed);
        };
        std::vector<std::string> finals;
        for (PropagationKind kind : {PropagationKind::DepthFirst, PropagationKind::BreadthFirst,
                                     PropagationKind::RandomSeeded}) {
            Engine e{ranks(), {kind, seed}};
            for (const Arc& a : seq.arcs) {
                const bool expect = oracle::reaches(e.graph(), a.head, a.tail);
                const InsertOutcome o = e.insert(a.tail, a.head);
                CHECK((kind_of(o) == OutcomeKind::CycleDetected) == expect);
                if (e.halted()) {
                    const auto& w = std::get<CycleDetected>(o).witness;
                    CHECK(w.front() == a.head);
                    CHECK(w[w.size() - 2] == a.tail);
                    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                        CHECK(e.graph().has_arc(w[i], w[i + 1]));
                    }
                    break;
                }
                CHECK(matches_oracle(e));
                for (const Arc& x : e.graph().arcs()) {
                    CHECK(cmp_lex(e.label(x.tail), e.label(x.head)) != Ordering::LexLess);
                }
                for (VertexId v = 0; v < seq.n; ++v) {
                    auto want = oracle::same_label_preds(e.graph(), e.labels(), v);
                    CHECK(as_set(e.same_label_preds(v)) == std::set<VertexId>(want.begin(), want.end()));
                }
            }
            CHECK(e.halted());
            finals.push_back(dump_snapshot(snapshot(e)));
        }
        CHECK(finals[0] == finals[1]);
        CHECK(finals[0] == finals[2]);
    }
}

TEST_CASE("backward search soundness") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const ArcSequence seq = random_dag_order(30, 60, seed);
        Engine e{RankAssignment::vertex_scheme(seq.n, 0.2, seed)};
        for (const Arc& a : seq.arcs) {
            e.insert(a.tail, a.head);
        }
        for (VertexId u = 0; u < seq.n; ++u) {
            const BackwardResult b = e.backward_search(u, u == 0 ? 1 : 0, e.label(u));
            const auto preds = oracle::predecessors(e.graph(), u);
            for (VertexId w : b.probed) {
                CHECK(preds[w] != 0);
            }
        }
    }
}
