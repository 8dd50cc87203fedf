#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "icd/engine.hpp"
#include "icd/generators.hpp"
#include "icd/oracle.hpp"

using namespace icd;

namespace {

constexpr Rank kInf = Rank::infinity();

Digraph graph_of(const ArcSequence& seq) {
    Digraph g{seq.n};
    for (const Arc& a : seq.arcs) {
        g.add_arc(a.tail, a.head);
    }
    return g;
}

} // namespace

TEST_CASE("static labels by hand") {
    SUBCASE("isolated ranked vertex") {
        Digraph g{1};
        const std::vector<Rank> r{Rank{5}};
        CHECK(oracle::static_labels(g, r)[0] == Label{{0, Rank{5}}});
    }
    SUBCASE("chain with an unranked middle") {
        // 1 -> 2 -> 3 with r(1)=1, r(3)=2.
        Digraph g{3};
        g.add_arc(0, 1);
        g.add_arc(1, 2);
        const std::vector<Rank> r{Rank{1}, kInf, Rank{2}};
        const auto labels = oracle::static_labels(g, r);
        CHECK(labels[1] == Label{{0, Rank{1}}});
        CHECK(labels[2] == Label({{0, Rank{1}}, {2, Rank{2}}}));
    }
    SUBCASE("four-vertex chain") {
        Digraph g{4};
        g.add_arc(0, 1);
        g.add_arc(1, 2);
        g.add_arc(2, 3);
        const std::vector<Rank> r{Rank{1}, kInf, Rank{2}, kInf};
        const auto labels = oracle::static_labels(g, r);
        CHECK(rank_sequence(labels[3]) == std::vector<Rank>{Rank{1}, Rank{2}, kInf});
        CHECK(labels[0] == labels[1]);
        CHECK(labels[2] == labels[3]);
        CHECK(oracle::reaches(g, 0, 3));
    }
    SUBCASE("second entry must follow the first") {
        // 0 (rank 5) -> 2 <- 1 (rank 1), 0 -> 3 (rank 2) -> 2: the entry after 1 is
        // restricted to successors of 1, so 2's label is (1, 2's own rank).
        Digraph g{4};
        g.add_arc(0, 2);
        g.add_arc(1, 2);
        g.add_arc(0, 3);
        g.add_arc(3, 2);
        const std::vector<Rank> r{Rank{5}, Rank{1}, Rank{7}, Rank{2}};
        const auto labels = oracle::static_labels(g, r);
        CHECK(labels[2] == Label({{1, Rank{1}}, {2, Rank{7}}}));
        CHECK(labels == oracle::sweep_labels(g, r));
    }
    SUBCASE("cyclic graph") {
        Digraph g{2};
        g.add_arc(0, 1);
        g.add_arc(1, 0);
        const std::vector<Rank> r{Rank{1}, Rank{2}};
        CHECK_THROWS_AS(oracle::static_labels(g, r), std::invalid_argument);
        CHECK_FALSE(oracle::is_acyclic(g));
    }
}

TEST_CASE("static and sweep labelings agree") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const Digraph g = graph_of(random_dag_order(40, 20 + seed * 2, seed));
        const auto ranks = RankAssignment::vertex_scheme(40, 0.1 + 0.01 * static_cast<double>(seed), seed);
        const auto a = oracle::static_labels(g, ranks.vertex_ranks());
        CHECK(a == oracle::sweep_labels(g, ranks.vertex_ranks()));
        CHECK(oracle::check_no_path_theorem(g, a).empty());
        for (VertexId v = 0; v < 40; ++v) {
            const auto& l = a[v];
            if (ranks.is_ranked(v)) {
                REQUIRE_FALSE(l.empty());
                CHECK(l.back() == LabelEntry{v, ranks.rank(v)});
            }
            const auto preds = oracle::predecessors(g, v);
            for (const auto& e : l.entries()) {
                CHECK(preds[e.vertex] != 0);
            }
        }
    }
}

TEST_CASE("reaches") {
    Digraph g{3};
    g.add_arc(0, 1);
    CHECK(oracle::reaches(g, 2, 2));
    CHECK(oracle::reaches(g, 0, 1));
    CHECK_FALSE(oracle::reaches(g, 1, 0));
    CHECK_FALSE(oracle::reaches(g, 0, 2));
}

TEST_CASE("no-path check catches a corrupted label") {
    Digraph empty{0};
    CHECK(oracle::check_no_path_theorem(empty, {}).empty());

    Engine e{RankAssignment::from_ranks({Rank{1}, Rank{2}, Rank{3}})};
    e.insert(0, 1);
    e.insert(1, 2);
    CHECK(oracle::check_no_path_theorem(e.graph(), e.labels()).empty());
    e.corrupt_label_for_testing(2, Label{{2, Rank{3}}});
    CHECK_FALSE(oracle::check_no_path_theorem(e.graph(), e.labels()).empty());
}

TEST_CASE("backward set size") {
    SUBCASE("all ranked") {
        const Digraph g = graph_of(random_dag_order(20, 40, 3));
        const auto ranks = RankAssignment::full(20, 3);
        const auto labels = oracle::static_labels(g, ranks.vertex_ranks());
        for (VertexId v = 0; v < 20; ++v) {
            CHECK(oracle::backward_set_size(g, labels, ranks.vertex_ranks(), v) == 0);
        }
        CHECK(oracle::max_backward_set_size(g, labels, ranks.vertex_ranks()) == 0);
    }
    SUBCASE("single unranked vertex") {
        Digraph g{1};
        const std::vector<Rank> r{kInf};
        const std::vector<Label> labels{Label{}};
        CHECK(oracle::backward_set_size(g, labels, r, 0) == 0);
    }
    SUBCASE("equal-label chain of three") {
        Digraph g{3};
        g.add_arc(0, 1);
        g.add_arc(1, 2);
        const std::vector<Rank> r{kInf, kInf, kInf};
        const auto labels = oracle::static_labels(g, r);
        CHECK(oracle::backward_set_size(g, labels, r, 2) == 2);
        CHECK(oracle::max_backward_set_size(g, labels, r) == 2);
    }
    SUBCASE("restricted walk equals the full count") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Digraph g = graph_of(random_dag_order(50, 80, seed));
            const auto ranks = RankAssignment::vertex_scheme(50, 0.15, seed);
            const auto labels = oracle::static_labels(g, ranks.vertex_ranks());
            std::size_t worst = 0;
            for (VertexId v = 0; v < 50; ++v) {
                worst = std::max(worst, oracle::backward_set_size(g, labels, ranks.vertex_ranks(), v));
            }
            CHECK(oracle::max_backward_set_size(g, labels, ranks.vertex_ranks()) == worst);
        }
    }
}

TEST_CASE("ranked predecessor count includes the vertex") {
    Digraph g{3};
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    const std::vector<Rank> r{Rank{1}, kInf, Rank{2}};
    CHECK(oracle::ranked_predecessor_count(g, r, 0) == 1);
    CHECK(oracle::ranked_predecessor_count(g, r, 1) == 1);
    CHECK(oracle::ranked_predecessor_count(g, r, 2) == 2);
}
