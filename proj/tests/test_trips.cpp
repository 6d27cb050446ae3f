#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "crrank/trips.hpp"

using namespace crrank;

namespace {

// a=0, b=1, c=2, d=3 joined in a line plus a detached d->c segment pair.
RoadNetwork line_network() {
  std::istringstream in(
      "N,0\nN,1\nN,2\nN,3\n"
      "E,0,0,1,2\nE,1,1,2,2\nE,2,2,3,2\nE,3,3,2,2\nE,4,1,0,2\nE,5,2,1,2\n");
  return load_network(in);
}

std::vector<MappedReading> readings(TripId id, std::vector<EdgeId> edges) {
  std::vector<MappedReading> out;
  std::int64_t tm = 1000;
  for (EdgeId e : edges) out.push_back({id, e, tm += 30});
  return out;
}

}  // namespace

TEST_CASE("readings_to_trip concatenates edge endpoints") {
  RoadNetwork net = line_network();
  Trip trip = readings_to_trip(readings(1, {0, 1}), net);
  CHECK(trip.crossroads == std::vector<NodeId>{0, 1, 2});
  CHECK(trip.first_edge == 0);
  CHECK(trip.last_edge == 1);
  CHECK(trip.first_tm == 1030);
}

TEST_CASE("a single reading yields the minimal two-crossroad trip") {
  RoadNetwork net = line_network();
  Trip trip = readings_to_trip(readings(2, {0}), net);
  CHECK(trip.crossroads == std::vector<NodeId>{0, 1});
}

TEST_CASE("consecutive repeats of one edge collapse") {
  RoadNetwork net = line_network();
  Trip trip = readings_to_trip(readings(3, {0, 0, 0, 1, 1}), net);
  CHECK(trip.crossroads == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("discontinuous readings are rejected with a diagnostic") {
  RoadNetwork net = line_network();
  CHECK_THROWS_WITH_AS(readings_to_trip(readings(4, {0, 2}), net),
                       doctest::Contains("discontinuity after edge 0 (0->1)"),
                       Error);
}

TEST_CASE("assign_od prefers node regions and falls back to region_right") {
  std::istringstream in(
      "N,0\nN,1\nN,2\n"
      "E,0,0,1,1,5\nE,1,1,2,1,7\nE,2,2,1,1,4\nE,3,1,0,1,1\n");
  RoadNetwork net = load_network(in);
  RegionAssignment regions;
  regions.region_count = 8;

  Trip forward{10, {0, 1, 2}, 0, 1, {}};
  Trip backward{11, {2, 1, 0}, 2, 3, {}};

  SUBCASE("boundary endpoints use the right-hand region of the terminal edges") {
    OdPair od = assign_od(forward, net, regions);
    CHECK(od.origin == 5);
    CHECK(od.destination == 7);
    OdPair rev = assign_od(backward, net, regions);
    CHECK(rev.origin == 4);
    CHECK(rev.destination == 1);
  }

  SUBCASE("interior endpoints take node_region and swap under reversal") {
    regions.node_region[0] = 1;
    regions.node_region[2] = 3;
    OdPair od = assign_od(forward, net, regions);
    CHECK(od == OdPair{1, 3});
    OdPair rev = assign_od(backward, net, regions);
    CHECK(rev == OdPair{3, 1});
  }

  SUBCASE("no region at an endpoint rejects the trip") {
    std::istringstream bare(
        "N,0\nN,1\nN,2\nE,0,0,1,1\nE,1,1,2,1,7\n");
    RoadNetwork net2 = load_network(bare);
    CHECK_THROWS_WITH_AS(assign_od(forward, net2, regions),
                         doctest::Contains("unresolvable OD"), Error);
  }
}

namespace {

std::vector<std::pair<Trip, OdPair>> nine_trip_fixture() {
  // 5 trips (1,2) over s1 x3 and s2 x2, plus 4 trips (2,1) over s3 x4.
  std::vector<NodeId> s1{0, 1, 2};
  std::vector<NodeId> s2{0, 1};
  std::vector<NodeId> s3{2, 1, 0};
  std::vector<std::pair<Trip, OdPair>> trips;
  TripId id = 1;
  auto add = [&](const std::vector<NodeId>& seq, OdPair od) {
    trips.push_back({Trip{id++, seq, 0, 0, {}}, od});
  };
  for (int i = 0; i < 3; ++i) add(s1, {1, 2});
  for (int i = 0; i < 2; ++i) add(s2, {1, 2});
  for (int i = 0; i < 4; ++i) add(s3, {2, 1});
  return trips;
}

}  // namespace

TEST_CASE("group_transitions merges identical sequences and buckets by OD") {
  auto trips = nine_trip_fixture();
  auto transitions = group_transitions(trips, 3);

  REQUIRE(transitions.size() == 2);
  const Transition& first = transitions[0];
  CHECK(first.origin == 1);
  CHECK(first.destination == 2);
  CHECK(first.trip_count == 5);
  REQUIRE(first.paths.size() == 2);
  // paths sorted by sequence: {0,1} before {0,1,2}
  CHECK(first.paths[0].sequence == std::vector<NodeId>{0, 1});
  CHECK(first.paths[0].trip_count == 2);
  CHECK(first.paths[1].sequence == std::vector<NodeId>{0, 1, 2});
  CHECK(first.paths[1].trip_count == 3);

  const Transition& second = transitions[1];
  CHECK(second.origin == 2);
  CHECK(second.trip_count == 4);
  CHECK(second.paths.size() == 1);
}

TEST_CASE("group_transitions drops transitions under min_trips") {
  std::vector<std::pair<Trip, OdPair>> trips;
  trips.push_back({Trip{1, {0, 1}, 0, 0, {}}, {1, 2}});
  trips.push_back({Trip{2, {0, 1}, 0, 0, {}}, {1, 2}});
  CHECK(group_transitions(trips, 3).empty());

  trips.push_back({Trip{3, {0, 1}, 0, 0, {}}, {1, 2}});
  auto kept = group_transitions(trips, 3);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].trip_count == 3);
  CHECK(kept[0].paths.size() == 1);
}

TEST_CASE("group_transitions conserves trips and is order independent") {
  auto trips = nine_trip_fixture();
  auto expected = group_transitions(trips, 1);

  std::int64_t total = 0;
  for (const Transition& t : expected) {
    std::int64_t per_paths = 0;
    for (const PathRecord& p : t.paths) per_paths += p.trip_count;
    CHECK(per_paths == t.trip_count);
    total += t.trip_count;
  }
  CHECK(total == static_cast<std::int64_t>(trips.size()));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(trips.begin(), trips.end(), rng);
    auto shuffled = group_transitions(trips, 1);
    REQUIRE(shuffled.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(shuffled[i].origin == expected[i].origin);
      CHECK(shuffled[i].destination == expected[i].destination);
      CHECK(shuffled[i].trip_count == expected[i].trip_count);
      REQUIRE(shuffled[i].paths.size() == expected[i].paths.size());
      for (std::size_t p = 0; p < expected[i].paths.size(); ++p) {
        CHECK(shuffled[i].paths[p].sequence == expected[i].paths[p].sequence);
        CHECK(shuffled[i].paths[p].trip_count == expected[i].paths[p].trip_count);
      }
    }
  }
}

TEST_CASE("intra-region trips stay as o == d transitions") {
  std::vector<std::pair<Trip, OdPair>> trips;
  for (TripId i = 1; i <= 3; ++i) trips.push_back({Trip{i, {0, 1}, 0, 0, {}}, {4, 4}});
  auto transitions = group_transitions(trips, 3);
  REQUIRE(transitions.size() == 1);
  CHECK(transitions[0].origin == transitions[0].destination);
}

TEST_CASE("load_trips handles both record forms and collects rejects") {
  RoadNetwork net = line_network();
  std::istringstream in(
      "T,1,0,100\nT,1,1,130\n"
      "P,2,0:1:2,0,1\n"
      "T,3,0,50\nT,3,2,90\n"          // discontinuity
      "P,4,2:3,1,2\n"                 // wrong first_edge
      "P,5,0:1:2,0,5\n"               // last_edge is the reverse segment
      );
  TripLoadResult result = load_trips(in, net);
  REQUIRE(result.trips.size() == 2);
  CHECK(result.trips[0].id == 2);  // P records parse before reading groups
  CHECK(result.trips[1].id == 1);
  CHECK(result.trips[1].crossroads == std::vector<NodeId>{0, 1, 2});

  REQUIRE(result.rejects.size() == 3);
  CHECK(result.rejects[0].trip_id == 4);
  CHECK(result.rejects[1].trip_id == 5);
  CHECK(result.rejects[2].trip_id == 3);
  CHECK(result.rejects[2].reason.find("discontinuity") != std::string::npos);
}

TEST_CASE("trips save/load round-trips resolved trips") {
  RoadNetwork net = line_network();
  std::vector<Trip> trips{{7, {0, 1, 2}, 0, 1, {}}, {9, {2, 1}, 5, 5, {}}};
  std::ostringstream out;
  save_trips(trips, out);
  std::istringstream in(out.str());
  TripLoadResult result = load_trips(in, net);
  CHECK(result.rejects.empty());
  REQUIRE(result.trips.size() == 2);
  CHECK(result.trips[0].crossroads == trips[0].crossroads);
  CHECK(result.trips[1].first_edge == 5);
}

TEST_CASE("time windows filter on the first reading's time of day") {
  auto windows = parse_time_windows("07:30-10:00,17:00-19:30");
  REQUIRE(windows.size() == 2);
  CHECK(windows[0].begin == 7 * 3600 + 30 * 60);
  CHECK(windows[1].end == 19 * 3600 + 30 * 60);

  std::vector<Trip> trips;
  Trip morning{1, {0, 1}, 0, 0, 8 * 3600};          // 08:00
  Trip noon{2, {0, 1}, 0, 0, 12 * 3600};            // 12:00
  Trip edge{3, {0, 1}, 0, 0, 10 * 3600};            // 10:00 inclusive
  Trip untimed{4, {0, 1}, 0, 0, std::nullopt};
  Trip next_day{5, {0, 1}, 0, 0, 86400 + 18 * 3600};  // 18:00 next day
  trips = {morning, noon, edge, untimed, next_day};

  auto kept = filter_by_time_windows(trips, windows);
  std::vector<TripId> ids;
  for (const Trip& t : kept) ids.push_back(t.id);
  CHECK(ids == std::vector<TripId>{1, 3, 4, 5});

  CHECK(filter_by_time_windows(trips, {}).size() == trips.size());
  CHECK_THROWS_AS(parse_time_windows("25:00-26:00"), Error);
  CHECK_THROWS_AS(parse_time_windows("0800-0900"), Error);
}

TEST_CASE("rejects csv quotes reasons when needed") {
  std::vector<RejectRecord> rejects{{3, "unresolvable OD"},
                                    {4, "a, b and \"c\""}};
  std::ostringstream out;
  write_rejects_csv(rejects, out);
  CHECK(out.str() ==
        "trip_id,reason\n3,unresolvable OD\n4,\"a, b and \"\"c\"\"\"\n");
}
