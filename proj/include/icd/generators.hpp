#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "icd/digraph.hpp"

namespace icd {

// An insertion sequence over vertices 0..n-1.
struct ArcSequence {
    std::size_t n = 0;
    std::vector<Arc> arcs;
};

enum class GeneratorKind { RandomDagOrder, Layered, Path, DenseAll };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::RandomDagOrder;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t layers = 2;
    std::size_t max_degree = 0; // RandomDagOrder only; 0 = unbounded
    std::uint64_t seed = 0;
    bool final_cycle = false;
};

// Random vertex order, m distinct forward arcs (fewer if the order or the
// degree bound admits fewer), insertion order shuffled. max_degree bounds both
// in- and out-degree.
ArcSequence random_dag_order(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t max_degree = 0);
// Vertices split into `layers` groups of a random order; arcs only join
// consecutive layers.
ArcSequence layered(std::size_t n, std::size_t layers, std::size_t m, std::uint64_t seed);
ArcSequence path(std::size_t n);
// All n(n-1)/2 forward arcs of a random order, shuffled.
ArcSequence dense_all(std::size_t n, std::uint64_t seed);
// Appends one arc (a, b) with a reachable from b, a != b. Throws
// std::invalid_argument if the sequence has no arc.
ArcSequence with_final_cycle(ArcSequence inner, std::uint64_t seed);

ArcSequence generate(const GeneratorSpec& spec);

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view generator_kind_name(GeneratorKind kind);

struct EdgeListError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "# comment" lines, then "n <count>", then one "u v" per arc.
void write_edge_list(std::ostream& out, const ArcSequence& seq, std::string_view comment = {});
ArcSequence read_edge_list(std::istream& in);
ArcSequence read_edge_list_file(const std::string& path); // throws EdgeListError

} // namespace icd
