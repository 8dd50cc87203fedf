#include "icd/generators.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "icd/oracle.hpp"

namespace icd {

namespace {

std::vector<VertexId> random_order(std::size_t n, std::mt19937_64& rng) {
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), VertexId{0});
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

std::uint64_t key(VertexId a, VertexId b) { return (std::uint64_t{a} << 32) | b; }

} // namespace

ArcSequence random_dag_order(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t max_degree) {
    std::mt19937_64 rng{seed};
    ArcSequence seq{n, {}};
    if (n < 2) {
        return seq;
    }
    const auto order = random_order(n, rng);
    const std::size_t pairs = n * (n - 1) / 2;
    const std::size_t bound = max_degree == 0 ? n : max_degree;
    std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0);
    auto admit = [&](VertexId a, VertexId b) { return out_deg[a] < bound && in_deg[b] < bound; };
    auto take = [&](VertexId a, VertexId b) {
        ++out_deg[a];
        ++in_deg[b];
        seq.arcs.push_back({a, b});
    };

    std::unordered_set<std::uint64_t> seen;
    const std::size_t attempts = m < pairs / 4 ? 50 * m : 0;
    std::uniform_int_distribution<std::size_t> pos(0, n - 1);
    for (std::size_t t = 0; t < attempts && seq.arcs.size() < m; ++t) {
        std::size_t i = pos(rng), j = pos(rng);
        if (i == j) {
            continue;
        }
        if (i > j) {
            std::swap(i, j);
        }
        const VertexId a = order[i], b = order[j];
        if (admit(a, b) && seen.insert(key(a, b)).second) {
            take(a, b);
        }
    }
    if (seq.arcs.size() < m) {
        std::vector<Arc> all;
        all.reserve(pairs);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!seen.contains(key(order[i], order[j]))) {
                    all.push_back({order[i], order[j]});
                }
            }
        }
        std::shuffle(all.begin(), all.end(), rng);
        for (const Arc& a : all) {
            if (seq.arcs.size() == m) {
                break;
            }
            if (admit(a.tail, a.head)) {
                take(a.tail, a.head);
            }
        }
    }
    std::shuffle(seq.arcs.begin(), seq.arcs.end(), rng);
    return seq;
}

ArcSequence layered(std::size_t n, std::size_t layers, std::size_t m, std::uint64_t seed) {
    if (layers == 0) {
        throw std::invalid_argument("layered: need at least one layer");
    }
    std::mt19937_64 rng{seed};
    ArcSequence seq{n, {}};
    const auto order = random_order(n, rng);
    std::vector<std::vector<VertexId>> groups(layers);
    for (std::size_t i = 0; i < n; ++i) {
        groups[i * layers / n].push_back(order[i]);
    }
    std::vector<Arc> all;
    for (std::size_t l = 0; l + 1 < layers; ++l) {
        for (VertexId a : groups[l]) {
            for (VertexId b : groups[l + 1]) {
                all.push_back({a, b});
            }
        }
    }
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(m, all.size()));
    seq.arcs = std::move(all);
    return seq;
}

ArcSequence path(std::size_t n) {
    ArcSequence seq{n, {}};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        seq.arcs.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
    }
    return seq;
}

ArcSequence dense_all(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng{seed};
    ArcSequence seq{n, {}};
    const auto order = random_order(n, rng);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            seq.arcs.push_back({order[i], order[j]});
        }
    }
    std::shuffle(seq.arcs.begin(), seq.arcs.end(), rng);
    return seq;
}

ArcSequence with_final_cycle(ArcSequence inner, std::uint64_t seed) {
    if (inner.arcs.empty()) {
        throw std::invalid_argument("with_final_cycle: sequence has no arc");
    }
    std::mt19937_64 rng{seed};
    Digraph g{inner.n};
    for (const Arc& a : inner.arcs) {
        g.add_arc(a.tail, a.head);
    }
    std::vector<VertexId> tails;
    for (VertexId b = 0; b < inner.n; ++b) {
        if (!g.out(b).empty()) {
            tails.push_back(b);
        }
    }
    const VertexId b = tails[std::uniform_int_distribution<std::size_t>(0, tails.size() - 1)(rng)];
    const auto reach = oracle::successors(g, b);
    std::vector<VertexId> heads;
    for (VertexId a = 0; a < inner.n; ++a) {
        if (a != b && reach[a] != 0) {
            heads.push_back(a);
        }
    }
    const VertexId a = heads[std::uniform_int_distribution<std::size_t>(0, heads.size() - 1)(rng)];
    inner.arcs.push_back({a, b});
    return inner;
}

ArcSequence generate(const GeneratorSpec& spec) {
    ArcSequence seq;
    switch (spec.kind) {
    case GeneratorKind::RandomDagOrder: seq = random_dag_order(spec.n, spec.m, spec.seed, spec.max_degree); break;
    case GeneratorKind::Layered: seq = layered(spec.n, spec.layers, spec.m, spec.seed); break;
    case GeneratorKind::Path: seq = path(spec.n); break;
    case GeneratorKind::DenseAll: seq = dense_all(spec.n, spec.seed); break;
    }
    if (spec.final_cycle) {
        // A distinct stream so the inner sequence does not shift.
        seq = with_final_cycle(std::move(seq), spec.seed ^ 0x9e3779b97f4a7c15ULL);
    }
    return seq;
}

GeneratorKind parse_generator_kind(std::string_view name) {
    if (name == "random-dag") return GeneratorKind::RandomDagOrder;
    if (name == "layered") return GeneratorKind::Layered;
    if (name == "path") return GeneratorKind::Path;
    if (name == "dense") return GeneratorKind::DenseAll;
    throw std::invalid_argument("unknown generator: " + std::string{name});
}

std::string_view generator_kind_name(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::RandomDagOrder: return "random-dag";
    case GeneratorKind::Layered: return "layered";
    case GeneratorKind::Path: return "path";
    case GeneratorKind::DenseAll: return "dense";
    }
    return "?";
}

void write_edge_list(std::ostream& out, const ArcSequence& seq, std::string_view comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << "n " << seq.n << '\n';
    for (const Arc& a : seq.arcs) {
        out << a.tail << ' ' << a.head << '\n';
    }
}

ArcSequence read_edge_list(std::istream& in) {
    ArcSequence seq;
    bool have_n = false;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) {
        throw EdgeListError("line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields{line};
        if (!have_n) {
            std::string tag;
            long long count = -1;
            if (!(fields >> tag >> count) || tag != "n" || count < 0) {
                fail("expected 'n <count>'");
            }
            seq.n = static_cast<std::size_t>(count);
            have_n = true;
            continue;
        }
        long long a = -1, b = -1;
        std::string rest;
        if (!(fields >> a >> b) || (fields >> rest)) {
            fail("expected 'u v'");
        }
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= seq.n || static_cast<std::size_t>(b) >= seq.n) {
            fail("vertex id out of range");
        }
        seq.arcs.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
    }
    if (!have_n) {
        fail("missing 'n <count>'");
    }
    return seq;
}

ArcSequence read_edge_list_file(const std::string& path) {
    std::ifstream in{path};
    if (!in) {
        throw EdgeListError("cannot open " + path);
    }
    return read_edge_list(in);
}

} // namespace icd
