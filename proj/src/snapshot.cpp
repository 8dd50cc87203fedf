#include "icd/snapshot.hpp"

#include <algorithm>

namespace icd {

using nlohmann::json;

json snapshot_json(const Digraph& g, const RankAssignment& ranks, std::span<const Label> labels, bool halted) {
    json arcs = json::array();
    for (const Arc& a : g.arcs()) {
        arcs.push_back({a.tail, a.head});
    }
    json rank_list = json::array();
    json label_list = json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const Rank r = ranks.rank(v);
        rank_list.push_back(r.is_finite() ? json(r.value()) : json(nullptr));
        label_list.push_back(render(labels[v]));
    }
    return json{{"vertices", g.vertex_count()},
                {"arcs", std::move(arcs)},
                {"ranks", std::move(rank_list)},
                {"labels", std::move(label_list)},
                {"halted", halted}};
}

json caches_json(std::span<const NeighborCache> caches) {
    json out = json::array();
    for (const NeighborCache& cache : caches) {
        std::vector<std::pair<VertexId, std::string>> rows;
        for (const auto& [target, label] : cache.cached) {
            rows.emplace_back(target, render(label));
        }
        std::ranges::sort(rows);
        json entry = json::array();
        for (auto& [target, label] : rows) {
            entry.push_back({{"target", target}, {"label", std::move(label)}});
        }
        out.push_back(std::move(entry));
    }
    return out;
}

json snapshot(const Engine& engine) {
    return snapshot_json(engine.graph(), engine.ranks(), engine.labels(), engine.halted());
}

namespace {

template <class E>
std::vector<NeighborCache> collect_caches(const E& e) {
    std::vector<NeighborCache> caches;
    for (VertexId w = 0; w < e.graph().vertex_count(); ++w) {
        caches.push_back(e.cache(w));
    }
    return caches;
}

} // namespace

json snapshot(const QueueEngine& engine) {
    json snap = snapshot_json(engine.graph(), engine.ranks(), engine.labels(), engine.halted());
    snap["caches"] = caches_json(collect_caches(engine));
    return snap;
}

json snapshot(const MessageSimulator& sim) {
    json snap = snapshot_json(sim.graph(), sim.ranks(), sim.labels(), sim.halted());
    if (sim.protocol() == Protocol::Queue) {
        snap["caches"] = caches_json(collect_caches(sim));
    }
    return snap;
}

std::string dump_snapshot(const json& snap) { return snap.dump(); }

} // namespace icd
