#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "icd/digraph.hpp"
#include "icd/engine.hpp"
#include "icd/label.hpp"
#include "icd/message_sim.hpp"
#include "icd/queue_engine.hpp"
#include "icd/rank_scheme.hpp"

namespace icd {

// {vertices, arcs, ranks, labels, halted}; arcs in insertion order, unranked
// vertices as null, labels rendered.
nlohmann::json snapshot_json(const Digraph& g, const RankAssignment& ranks, std::span<const Label> labels,
                             bool halted);

// Per vertex, the cached out-neighbor labels ordered by target.
nlohmann::json caches_json(std::span<const NeighborCache> caches);

nlohmann::json snapshot(const Engine& engine);
nlohmann::json snapshot(const QueueEngine& engine); // adds "caches"
nlohmann::json snapshot(const MessageSimulator& sim); // adds "caches" under the queue protocol

// Canonical text form used for byte comparisons.
std::string dump_snapshot(const nlohmann::json& snap);

} // namespace icd
