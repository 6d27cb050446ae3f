#include "crrank/synthgen.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace crrank {

void GridSpec::validate() const {
  if (rows < 2 || cols < 2) throw Error("grid needs rows >= 2 and cols >= 2");
  for (int level : {boundary_level, interior_level}) {
    if (level < 1 || level > 3) {
      throw Error("grid level " + std::to_string(level) + " outside {1,2,3}");
    }
  }
}

std::pair<RoadNetwork, RegionAssignment> make_grid_network(const GridSpec& spec) {
  spec.validate();
  const int rows = spec.rows;
  const int cols = spec.cols;
  auto node_id = [cols](int r, int c) -> NodeId { return static_cast<NodeId>(r) * cols + c; };
  auto cell_id = [cols](int i, int j) -> RegionId {
    return static_cast<RegionId>(i) * (cols - 1) + j;
  };

  std::vector<Crossroad> nodes;
  nodes.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Crossroad n;
      n.id = node_id(r, c);
      n.coords = {{100.0 * c, 100.0 * r}};
      nodes.push_back(std::move(n));
    }
  }

  std::vector<RoadSegment> segments;
  EdgeId next_edge = 0;
  auto add_pair = [&](NodeId a, NodeId b, int level,
                      std::optional<RegionId> right_ab,
                      std::optional<RegionId> left_ab) {
    RoadSegment fwd{next_edge++, a, b, level, right_ab, left_ab};
    RoadSegment rev{next_edge++, b, a, level, left_ab, right_ab};
    segments.push_back(fwd);
    segments.push_back(rev);
  };

  // Horizontal segments. Heading east (+x), the right-hand side is the cell
  // below the row line; heading west it is the cell above.
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      int level = (r == 0 || r == rows - 1) ? spec.boundary_level
                                            : spec.interior_level;
      std::optional<RegionId> south, north;
      if (r - 1 >= 0) south = cell_id(r - 1, c);
      if (r <= rows - 2) north = cell_id(r, c);
      add_pair(node_id(r, c), node_id(r, c + 1), level, south, north);
    }
  }
  // Vertical segments. Heading north (+y), the right-hand side is the cell
  // east of the column line; heading south it is the cell west of it.
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int level = (c == 0 || c == cols - 1) ? spec.boundary_level
                                            : spec.interior_level;
      std::optional<RegionId> east, west;
      if (c <= cols - 2) east = cell_id(r, c);
      if (c - 1 >= 0) west = cell_id(r, c - 1);
      add_pair(node_id(r, c), node_id(r + 1, c), level, east, west);
    }
  }

  RegionAssignment regions;
  regions.region_count = static_cast<std::int64_t>(rows - 1) * (cols - 1);
  return {RoadNetwork::from_parts(std::move(nodes), std::move(segments)),
          regions};
}

namespace {

std::string od_name(RegionId o, RegionId d) {
  return "(" + std::to_string(o) + "," + std::to_string(d) + ")";
}

/// Hop distances to target over directed segments (reverse breadth-first
/// search). Unreached nodes keep -1.
std::vector<std::pair<NodeId, int>> distances_to(const RoadNetwork& network,
                                                 NodeId target) {
  std::map<NodeId, std::vector<NodeId>> in_neighbors;
  for (const RoadSegment& e : network.segments()) {
    in_neighbors[e.to_node].push_back(e.from_node);
  }
  std::map<NodeId, int> dist;
  dist[target] = 0;
  std::deque<NodeId> queue{target};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : in_neighbors[u]) {
      if (!dist.count(v)) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return {dist.begin(), dist.end()};
}

class ShortestRouter {
 public:
  ShortestRouter(const RoadNetwork& network, NodeId target)
      : network_(network), target_(target) {
    for (auto [node, d] : distances_to(network, target)) dist_[node] = d;
  }

  bool reachable(NodeId from) const { return dist_.count(from) > 0; }

  /// Walks one shortest route from `from` to the target. When rng is null
  /// the lowest-id next hop wins; otherwise ties break uniformly at random.
  std::vector<NodeId> route(NodeId from, std::mt19937_64* rng) const {
    std::vector<NodeId> out{from};
    NodeId u = from;
    while (u != target_) {
      std::vector<NodeId> nexts;
      const int du = dist_.at(u);
      for (EdgeId eid : network_.out_edges(u)) {
        NodeId v = network_.segment(eid).to_node;
        auto it = dist_.find(v);
        if (it != dist_.end() && it->second == du - 1) nexts.push_back(v);
      }
      std::sort(nexts.begin(), nexts.end());
      nexts.erase(std::unique(nexts.begin(), nexts.end()), nexts.end());
      NodeId pick = nexts.front();
      if (rng && nexts.size() > 1) {
        std::uniform_int_distribution<std::size_t> choose(0, nexts.size() - 1);
        pick = nexts[choose(*rng)];
      }
      out.push_back(pick);
      u = pick;
    }
    return out;
  }

 private:
  const RoadNetwork& network_;
  NodeId target_;
  std::map<NodeId, int> dist_;
};

/// Lowest-id directed segment carrying the region on its right.
std::optional<EdgeId> anchor_edge(const RoadNetwork& network, RegionId region) {
  for (const RoadSegment& e : network.segments()) {
    if (e.region_right && *e.region_right == region) return e.id;
  }
  return std::nullopt;
}

Trip trip_from_route(const RoadNetwork& network, std::vector<NodeId> route,
                     TripId id) {
  if (route.size() < 2) throw Error("route needs at least 2 crossroads");
  Trip trip;
  trip.id = id;
  auto first = network.find_segment(route[0], route[1]);
  auto last = network.find_segment(route[route.size() - 2], route.back());
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    if (!network.find_segment(route[i], route[i + 1])) {
      throw Error("route breaks between " + std::to_string(route[i]) + " and " +
                  std::to_string(route[i + 1]));
    }
  }
  trip.first_edge = *first;
  trip.last_edge = *last;
  trip.crossroads = std::move(route);
  return trip;
}

}  // namespace

std::vector<std::pair<Trip, OdPair>> generate_trips(
    const RoadNetwork& network, const RegionAssignment& regions,
    const DemandSpec& demand) {
  std::mt19937_64 rng(demand.seed);
  std::vector<std::pair<Trip, OdPair>> out;
  TripId next_id = 1;

  for (const OdDemand& od : demand.od_pairs) {
    if (od.count < 1) throw Error("trip count must be >= 1 for " +
                                  od_name(od.origin, od.destination));
    for (RegionId region : {od.origin, od.destination}) {
      if (region < 0 || region >= regions.region_count) {
        throw Error("unknown region in pair " + od_name(od.origin, od.destination));
      }
    }

    if (od.policy == RoutePolicy::kExplicit) {
      for (std::int64_t i = 0; i < od.count; ++i) {
        Trip trip = trip_from_route(network, od.route, next_id++);
        OdPair derived = assign_od(trip, network, regions);
        if (derived.origin != od.origin || derived.destination != od.destination) {
          throw Error("explicit route for " + od_name(od.origin, od.destination) +
                      " resolves to " + od_name(derived.origin, derived.destination));
        }
        out.emplace_back(std::move(trip), derived);
      }
      continue;
    }

    auto start = anchor_edge(network, od.origin);
    auto end = anchor_edge(network, od.destination);
    if (!start || !end) {
      throw Error("unreachable OD " + od_name(od.origin, od.destination) +
                  ": no boundary segment has the region on its right");
    }
    const RoadSegment& e_start = network.segment(*start);
    const RoadSegment& e_end = network.segment(*end);

    ShortestRouter router(network, e_end.from_node);
    if (*start != *end && !router.reachable(e_start.to_node)) {
      throw Error("unreachable OD " + od_name(od.origin, od.destination));
    }

    for (std::int64_t i = 0; i < od.count; ++i) {
      std::vector<NodeId> route{e_start.from_node};
      if (*start == *end) {
        route.push_back(e_start.to_node);
      } else {
        std::mt19937_64* tie_rng =
            od.policy == RoutePolicy::kRandomShortest ? &rng : nullptr;
        for (NodeId n : router.route(e_start.to_node, tie_rng)) route.push_back(n);
        route.push_back(e_end.to_node);
      }
      Trip trip = trip_from_route(network, std::move(route), next_id++);
      // The router may pick a lower-id parallel edge; pin the anchors.
      trip.first_edge = *start;
      trip.last_edge = *end;
      OdPair derived = assign_od(trip, network, regions);
      if (derived.origin != od.origin || derived.destination != od.destination) {
        throw Error("route for " + od_name(od.origin, od.destination) +
                    " resolves to " + od_name(derived.origin, derived.destination));
      }
      out.emplace_back(std::move(trip), derived);
    }
  }
  return out;
}

Figure1Fixture figure1_scenario() {
  // 5x5 grid, all segments level 1, sixteen cell regions. The hub crossroad
  // 12 sits at the grid center; the local crossroad 8 sits on the boundary
  // between regions 3 and 7. Both are four-way crossroads with identical
  // incident levels, so their topology scores tie exactly.
  GridSpec spec{5, 5, 1, 1};
  auto [network, regions] = make_grid_network(spec);

  // Raw flow is 12 trips through each: the local crossroad carries two
  // transitions of one region pair (6 trips each way), the hub four straight
  // crossings of 3 trips each from four distinct region pairs.
  DemandSpec demand;
  auto explicit_route = [](RegionId o, RegionId d, std::int64_t count,
                           std::vector<NodeId> route) {
    return OdDemand{o, d, count, RoutePolicy::kExplicit, std::move(route)};
  };
  demand.od_pairs = {
      explicit_route(3, 7, 6, {3, 8, 13}),            // local, northbound
      explicit_route(7, 3, 6, {14, 9, 8, 9, 4}),      // local, southbound
      explicit_route(2, 14, 3, {2, 7, 12, 17, 22}),   // hub, south->north
      explicit_route(13, 1, 3, {22, 17, 12, 7, 2}),   // hub, north->south
      explicit_route(4, 7, 3, {10, 11, 12, 13, 14}),  // hub, west->east
      explicit_route(11, 8, 3, {14, 13, 12, 11, 10}), // hub, east->west
  };

  Figure1Fixture fixture;
  fixture.hub_crossroad = 12;
  fixture.local_crossroad = 8;
  for (auto& [trip, od] : generate_trips(network, regions, demand)) {
    fixture.trips.push_back(std::move(trip));
  }
  fixture.network = std::move(network);
  fixture.regions = std::move(regions);
  return fixture;
}

}  // namespace crrank
