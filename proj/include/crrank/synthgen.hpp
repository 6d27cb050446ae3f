#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "crrank/network.hpp"
#include "crrank/trips.hpp"

namespace crrank {

/// A rows x cols crossroad grid. Neighboring crossroads are joined by two
/// directed segments; each grid cell is one region; boundary-of-grid
/// segments take boundary_level, inner segments interior_level.
struct GridSpec {
  int rows = 2;
  int cols = 2;
  int boundary_level = 1;
  int interior_level = 2;

  void validate() const;
};

enum class RoutePolicy {
  kShortest,        // fewest hops, lowest-next-id tie-break
  kRandomShortest,  // fewest hops, seeded random tie-break per trip
  kExplicit,        // the demand's route verbatim
};

struct OdDemand {
  RegionId origin = 0;
  RegionId destination = 0;
  std::int64_t count = 1;
  RoutePolicy policy = RoutePolicy::kShortest;
  std::vector<NodeId> route;  // kExplicit only
};

struct DemandSpec {
  std::vector<OdDemand> od_pairs;
  std::uint64_t seed = 0;
};

/// Builds the grid network and its cell regions. Node (r, c) has id
/// r*cols + c and coordinates (100*c, 100*r); cell (i, j) has region id
/// i*(cols-1) + j. Every segment on a cell boundary carries region_right /
/// region_left for its travel direction, so trip ODs resolve by the
/// right-hand rule; no crossroad gets a node_region (all lie on boundaries).
std::pair<RoadNetwork, RegionAssignment> make_grid_network(const GridSpec& spec);

/// Emits demand.count trips per OD pair along routes chosen by policy, with
/// ids numbered from 1 in demand order. Each trip's OD is re-derived through
/// the network annotations and must match the demanded pair.
/// Throws when an OD pair has no realizable route, naming the pair.
std::vector<std::pair<Trip, OdPair>> generate_trips(
    const RoadNetwork& network, const RegionAssignment& regions,
    const DemandSpec& demand);

/// The motivating two-crossroad scenario: a symmetric grid where the hub
/// crossroad and the local crossroad carry exactly equal trip flow, but the
/// local one serves a single region pair (both directions) while the hub is
/// crossed by four distinct region pairs. Trip counts are pinned so every
/// transition has at least 3 trips.
struct Figure1Fixture {
  RoadNetwork network;
  RegionAssignment regions;
  std::vector<Trip> trips;
  NodeId hub_crossroad = 0;    // crossed by >= 4 distinct OD pairs
  NodeId local_crossroad = 0;  // crossed by one OD pair, both directions
};

Figure1Fixture figure1_scenario();

}  // namespace crrank
