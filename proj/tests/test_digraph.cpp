#include <doctest.h>

#include <stdexcept>

#include "icd/digraph.hpp"

using namespace icd;

TEST_CASE("digraph basics") {
    Digraph g{3};
    CHECK(g.vertex_count() == 3);
    CHECK(g.add_arc(0, 1) == 0);
    CHECK(g.add_arc(1, 2) == 1);
    CHECK(g.has_arc(0, 1));
    CHECK_FALSE(g.has_arc(1, 0));
    CHECK(g.arc_id(1, 2) == 1);
    CHECK(g.out(0).size() == 1);
    CHECK(g.in(2).front() == 1);
    CHECK_THROWS_AS(g.add_arc(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_arc(0, 7), std::out_of_range);
    CHECK(g.add_vertex() == 3);
    g.add_arc(3, 3);
    CHECK(g.has_arc(3, 3));
    CHECK(g.arcs().size() == 3);
    CHECK(g.arcs()[2].tail == 3);
}
