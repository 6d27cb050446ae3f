#pragma once

#include <map>
#include <span>
#include <vector>

#include "crrank/network.hpp"
#include "crrank/propagation.hpp"
#include "crrank/trips.hpp"

namespace crrank {

/// Trip traversal count per crossroad: the number of trips whose path
/// contains the crossroad (a path revisiting a crossroad counts its trips
/// once).
using FlowTable = std::map<NodeId, std::int64_t>;

FlowTable crossroad_flow(std::span<const Transition> transitions);

/// Naive flow-times-topology importance: normalized traversal flow
/// multiplied by normalized topology score, renormalized to sum 1 and
/// ranked with the shared tie-break.
std::vector<RankedEntry> baseline_rank(const FlowTable& flows,
                                       const RoadNetwork& network,
                                       double lambda);

}  // namespace crrank
