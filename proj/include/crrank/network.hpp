#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace crrank {

using NodeId = std::int64_t;
using EdgeId = std::int64_t;
using RegionId = std::int64_t;
using TripId = std::int64_t;

/// Error type for all validation, parse and contract failures in this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A road-network node. incident_edges holds ids of every directed segment
/// touching the node (in or out), in ascending id order.
struct Crossroad {
  NodeId id = 0;
  std::optional<std::array<double, 2>> coords;  // planar (x, y) in meters
  std::vector<EdgeId> incident_edges;
};

/// A directed road segment. level is 1 (arterial), 2 (sub-arterial) or
/// 3 (bypass). region_right / region_left name the regions bordering the
/// segment in travel direction, when the segment lies on a region boundary.
struct RoadSegment {
  EdgeId id = 0;
  NodeId from_node = 0;
  NodeId to_node = 0;
  int level = 2;
  std::optional<RegionId> region_right;
  std::optional<RegionId> region_left;
};

/// Immutable directed road network. Built once by from_parts() or
/// load_network(); nodes and segments are stored sorted by id and the
/// per-node out-edge adjacency index is precomputed.
class RoadNetwork {
 public:
  RoadNetwork() = default;

  /// Validates and indexes the given nodes and segments. Throws Error on
  /// duplicate ids, dangling endpoints, self loops or levels outside {1,2,3}.
  static RoadNetwork from_parts(std::vector<Crossroad> nodes,
                                std::vector<RoadSegment> segments);

  std::span<const Crossroad> nodes() const { return nodes_; }
  std::span<const RoadSegment> segments() const { return segments_; }

  bool has_node(NodeId id) const;
  bool has_segment(EdgeId id) const;
  const Crossroad& node(NodeId id) const;           // throws if absent
  const RoadSegment& segment(EdgeId id) const;      // throws if absent

  /// Out-edge ids of a node, ascending.
  std::span<const EdgeId> out_edges(NodeId id) const;

  /// Id of some segment from -> to, or nullopt. Lowest id wins if parallel
  /// segments exist.
  std::optional<EdgeId> find_segment(NodeId from, NodeId to) const;

 private:
  std::vector<Crossroad> nodes_;
  std::vector<RoadSegment> segments_;
  std::map<NodeId, std::size_t> node_index_;
  std::map<EdgeId, std::size_t> segment_index_;
  std::map<NodeId, std::vector<EdgeId>> out_edges_;
};

/// Region partition of the map. Interior nodes appear in node_region;
/// nodes on region boundaries may be absent and resolve through the
/// region_right annotation of the traversed segment.
struct RegionAssignment {
  std::map<NodeId, RegionId> node_region;
  std::int64_t region_count = 0;
};

// Line-oriented network format:
//   N,<id>[,<x>,<y>]
//   E,<id>,<from>,<to>,<level>[,<region_right>][,<region_left>]
// Blank lines and lines starting with '#' are skipped. Empty optional
// fields stay blank, e.g. "E,4,0,1,2,,7" has no region_right.
RoadNetwork load_network(std::istream& in);
RoadNetwork load_network_file(const std::string& path);
void save_network(const RoadNetwork& network, std::ostream& out);
void save_network_file(const RoadNetwork& network, const std::string& path);

// Region file: header "REGIONS,<count>" followed by "R,<node_id>,<region_id>"
// lines. When a network is given, node ids are checked against it.
RegionAssignment load_regions(std::istream& in,
                              const RoadNetwork* network = nullptr);
RegionAssignment load_regions_file(const std::string& path,
                                   const RoadNetwork* network = nullptr);
void save_regions(const RegionAssignment& regions, std::ostream& out);
void save_regions_file(const RegionAssignment& regions,
                       const std::string& path);

/// Checks that every region id referenced by the network's segments and the
/// assignment's node map is below region_count.
void validate_regions(const RoadNetwork& network,
                      const RegionAssignment& regions);

/// Level score of a segment: 1+lambda for level 1, 1 for level 2,
/// 1-lambda for level 3.
double level_score(const RoadSegment& segment, double lambda);

/// Sum of level_score over the node's incident directed segments, in
/// ascending segment-id order. Throws on an isolated crossroad.
double node_topology_score(const Crossroad& node, const RoadNetwork& network,
                           double lambda);

}  // namespace crrank
