#include <doctest.h>

#include <random>
#include <sstream>

#include "crrank/network.hpp"

using namespace crrank;

namespace {

RoadNetwork two_node_network() {
  std::istringstream in("N,0\nN,1\nE,0,0,1,1\n");
  return load_network(in);
}

}  // namespace

TEST_CASE("load_network parses a minimal file") {
  RoadNetwork net = two_node_network();
  CHECK(net.nodes().size() == 2);
  CHECK(net.segments().size() == 1);
  CHECK(net.segment(0).level == 1);
  CHECK(net.node(1).incident_edges == std::vector<EdgeId>{0});
}

TEST_CASE("load_network rejects bad records with the offending id") {
  SUBCASE("dangling endpoint") {
    std::istringstream in("N,0\nN,1\nE,0,0,2,1\n");
    CHECK_THROWS_WITH_AS(load_network(in),
                         doctest::Contains("missing node 2"), Error);
  }
  SUBCASE("level out of range") {
    std::istringstream in("N,0\nN,1\nE,7,0,1,4\n");
    CHECK_THROWS_WITH_AS(load_network(in),
                         doctest::Contains("edge 7 has invalid level 4"), Error);
  }
  SUBCASE("self loop") {
    std::istringstream in("N,0\nE,3,0,0,1\n");
    CHECK_THROWS_WITH_AS(load_network(in), doctest::Contains("edge 3"), Error);
  }
  SUBCASE("duplicate node") {
    std::istringstream in("N,0\nN,0\n");
    CHECK_THROWS_WITH_AS(load_network(in),
                         doctest::Contains("duplicate node id 0"), Error);
  }
  SUBCASE("garbage line") {
    std::istringstream in("Q,1\n");
    CHECK_THROWS_AS(load_network(in), Error);
  }
}

TEST_CASE("optional edge fields parse blank or present") {
  std::istringstream in("N,0\nN,1\nE,0,0,1,2,5,3\nE,1,1,0,2,,4\nE,2,0,1,2\n");
  RoadNetwork net = load_network(in);
  CHECK(net.segment(0).region_right == 5);
  CHECK(net.segment(0).region_left == 3);
  CHECK_FALSE(net.segment(1).region_right.has_value());
  CHECK(net.segment(1).region_left == 4);
  CHECK_FALSE(net.segment(2).region_right.has_value());
  CHECK_FALSE(net.segment(2).region_left.has_value());
}

TEST_CASE("network save/load round-trips") {
  std::istringstream in(
      "N,0,0,0\nN,1,100,0\nN,2,100,250.5\n"
      "E,0,0,1,1,3,\nE,1,1,0,1,,3\nE,2,1,2,3\n");
  RoadNetwork net = load_network(in);
  std::ostringstream saved;
  save_network(net, saved);
  std::istringstream again(saved.str());
  RoadNetwork net2 = load_network(again);

  REQUIRE(net2.nodes().size() == net.nodes().size());
  REQUIRE(net2.segments().size() == net.segments().size());
  for (std::size_t i = 0; i < net.segments().size(); ++i) {
    const RoadSegment& a = net.segments()[i];
    const RoadSegment& b = net2.segments()[i];
    CHECK(a.id == b.id);
    CHECK(a.from_node == b.from_node);
    CHECK(a.to_node == b.to_node);
    CHECK(a.level == b.level);
    CHECK(a.region_right == b.region_right);
    CHECK(a.region_left == b.region_left);
  }
  CHECK(net2.node(2).coords == net.node(2).coords);
}

TEST_CASE("level_score table") {
  RoadSegment e{0, 0, 1, 1, {}, {}};
  CHECK(level_score(e, 0.2) == 1.2);
  e.level = 2;
  CHECK(level_score(e, 0.2) == 1.0);
  e.level = 3;
  CHECK(level_score(e, 0.2) == 0.8);
  e.level = 2;
  CHECK(level_score(e, 0.0) == 1.0);
}

TEST_CASE("level_score is monotone decreasing in level for lambda > 0") {
  for (double lambda : {0.05, 0.2, 0.5, 0.99}) {
    RoadSegment e{0, 0, 1, 1, {}, {}};
    double prev = level_score(e, lambda);
    for (int level = 2; level <= 3; ++level) {
      e.level = level;
      double cur = level_score(e, lambda);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("node_topology_score sums incident level scores") {
  // node 1 carries a level-1 and a level-2 segment; node 3 two level-3 ones.
  std::istringstream in(
      "N,0\nN,1\nN,2\nN,3\nN,4\n"
      "E,0,0,1,1\nE,1,1,2,2\nE,2,3,4,3\nE,3,4,3,3\n");
  RoadNetwork net = load_network(in);
  CHECK(node_topology_score(net.node(1), net, 0.2) == doctest::Approx(2.2).epsilon(1e-14));
  CHECK(node_topology_score(net.node(3), net, 0.2) == doctest::Approx(1.6).epsilon(1e-14));
}

TEST_CASE("four-way level-1 crossroad scores 4.8 at lambda 0.2") {
  std::istringstream in(
      "N,0\nN,1\nN,2\nN,3\nN,4\n"
      "E,0,1,0,1\nE,1,2,0,1\nE,2,3,0,1\nE,3,4,0,1\n");
  RoadNetwork net = load_network(in);
  CHECK(node_topology_score(net.node(0), net, 0.2) == doctest::Approx(4.8).epsilon(1e-14));
}

TEST_CASE("isolated crossroad is an error") {
  std::istringstream in("N,0\nN,1\nN,2\nE,0,0,1,2\n");
  RoadNetwork net = load_network(in);
  CHECK_THROWS_WITH_AS(node_topology_score(net.node(2), net, 0.2),
                       doctest::Contains("isolated crossroad 2"), Error);
}

TEST_CASE("node_topology_score ignores segment insertion order") {
  std::vector<Crossroad> nodes{{0, {}, {}}, {1, {}, {}}, {2, {}, {}}};
  std::vector<RoadSegment> segments{{0, 0, 1, 1, {}, {}},
                                    {1, 1, 2, 2, {}, {}},
                                    {2, 2, 0, 3, {}, {}}};
  RoadNetwork a = RoadNetwork::from_parts(nodes, segments);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(segments.begin(), segments.end(), rng);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    RoadNetwork b = RoadNetwork::from_parts(nodes, segments);
    for (NodeId n : {0, 1, 2}) {
      CHECK(node_topology_score(a.node(n), a, 0.2) ==
            node_topology_score(b.node(n), b, 0.2));
    }
  }
}

TEST_CASE("region file parses and validates") {
  std::istringstream net_in("N,0\nN,1\nE,0,0,1,2\n");
  RoadNetwork net = load_network(net_in);

  std::istringstream in("REGIONS,3\nR,0,2\nR,1,0\n");
  RegionAssignment regions = load_regions(in, &net);
  CHECK(regions.region_count == 3);
  CHECK(regions.node_region.at(0) == 2);

  std::istringstream bad("REGIONS,2\nR,0,2\n");
  CHECK_THROWS_WITH_AS(load_regions(bad, &net),
                       doctest::Contains("out of range"), Error);
  std::istringstream unknown("REGIONS,2\nR,9,1\n");
  CHECK_THROWS_WITH_AS(load_regions(unknown, &net),
                       doctest::Contains("unknown node 9"), Error);
  std::istringstream headerless("R,0,1\n");
  CHECK_THROWS_AS(load_regions(headerless, &net), Error);
}

TEST_CASE("validate_regions checks edge annotations") {
  std::istringstream net_in("N,0\nN,1\nE,0,0,1,2,7\n");
  RoadNetwork net = load_network(net_in);
  RegionAssignment regions;
  regions.region_count = 3;
  CHECK_THROWS_WITH_AS(validate_regions(net, regions),
                       doctest::Contains("edge 0 references region 7"), Error);
  regions.region_count = 8;
  CHECK_NOTHROW(validate_regions(net, regions));
}
