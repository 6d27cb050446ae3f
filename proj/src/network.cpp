#include "crrank/network.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "crrank/textio.hpp"

namespace crrank {

RoadNetwork RoadNetwork::from_parts(std::vector<Crossroad> nodes,
                                    std::vector<RoadSegment> segments) {
  RoadNetwork net;
  std::sort(nodes.begin(), nodes.end(),
            [](const Crossroad& a, const Crossroad& b) { return a.id < b.id; });
  std::sort(segments.begin(), segments.end(),
            [](const RoadSegment& a, const RoadSegment& b) { return a.id < b.id; });

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!net.node_index_.emplace(nodes[i].id, i).second) {
      throw Error("duplicate node id " + std::to_string(nodes[i].id));
    }
    nodes[i].incident_edges.clear();
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const RoadSegment& e = segments[i];
    if (!net.segment_index_.emplace(e.id, i).second) {
      throw Error("duplicate edge id " + std::to_string(e.id));
    }
    if (e.level < 1 || e.level > 3) {
      throw Error("edge " + std::to_string(e.id) + " has invalid level " +
                  std::to_string(e.level));
    }
    if (e.from_node == e.to_node) {
      throw Error("edge " + std::to_string(e.id) + " is a self loop at node " +
                  std::to_string(e.from_node));
    }
    for (NodeId endpoint : {e.from_node, e.to_node}) {
      if (!net.node_index_.count(endpoint)) {
        throw Error("edge " + std::to_string(e.id) +
                    " references missing node " + std::to_string(endpoint));
      }
    }
  }

  // Incident edges and the out-edge index, both in ascending edge id order
  // (segments are sorted already).
  for (const RoadSegment& e : segments) {
    nodes[net.node_index_.at(e.from_node)].incident_edges.push_back(e.id);
    nodes[net.node_index_.at(e.to_node)].incident_edges.push_back(e.id);
    net.out_edges_[e.from_node].push_back(e.id);
  }

  net.nodes_ = std::move(nodes);
  net.segments_ = std::move(segments);
  return net;
}

bool RoadNetwork::has_node(NodeId id) const { return node_index_.count(id) > 0; }

bool RoadNetwork::has_segment(EdgeId id) const {
  return segment_index_.count(id) > 0;
}

const Crossroad& RoadNetwork::node(NodeId id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) {
    throw Error("unknown node " + std::to_string(id));
  }
  return nodes_[it->second];
}

const RoadSegment& RoadNetwork::segment(EdgeId id) const {
  auto it = segment_index_.find(id);
  if (it == segment_index_.end()) {
    throw Error("unknown edge " + std::to_string(id));
  }
  return segments_[it->second];
}

std::span<const EdgeId> RoadNetwork::out_edges(NodeId id) const {
  auto it = out_edges_.find(id);
  if (it == out_edges_.end()) return {};
  return it->second;
}

std::optional<EdgeId> RoadNetwork::find_segment(NodeId from, NodeId to) const {
  for (EdgeId eid : out_edges(from)) {
    if (segment(eid).to_node == to) return eid;
  }
  return std::nullopt;
}

RoadNetwork load_network(std::istream& in) {
  std::vector<Crossroad> nodes;
  std::vector<RoadSegment> segments;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "network line " + std::to_string(lineno);
    auto f = split_fields(line);
    if (f[0] == "N") {
      if (f.size() != 2 && f.size() != 4) {
        throw Error(where + ": N record needs id or id,x,y");
      }
      Crossroad n;
      n.id = parse_int(f[1], where);
      if (f.size() == 4) {
        n.coords = {{parse_double(f[2], where), parse_double(f[3], where)}};
      }
      nodes.push_back(std::move(n));
    } else if (f[0] == "E") {
      if (f.size() < 5 || f.size() > 7) {
        throw Error(where + ": E record needs id,from,to,level[,right][,left]");
      }
      RoadSegment e;
      e.id = parse_int(f[1], where);
      e.from_node = parse_int(f[2], where);
      e.to_node = parse_int(f[3], where);
      e.level = static_cast<int>(parse_int(f[4], where));
      if (f.size() >= 6 && !f[5].empty()) e.region_right = parse_int(f[5], where);
      if (f.size() == 7 && !f[6].empty()) e.region_left = parse_int(f[6], where);
      segments.push_back(e);
    } else {
      throw Error(where + ": expected N or E record, got '" + f[0] + "'");
    }
  }
  return RoadNetwork::from_parts(std::move(nodes), std::move(segments));
}

RoadNetwork load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open network file " + path);
  return load_network(in);
}

void save_network(const RoadNetwork& network, std::ostream& out) {
  for (const Crossroad& n : network.nodes()) {
    out << "N," << n.id;
    if (n.coords) {
      out << ',' << format_double((*n.coords)[0]) << ','
          << format_double((*n.coords)[1]);
    }
    out << '\n';
  }
  for (const RoadSegment& e : network.segments()) {
    out << "E," << e.id << ',' << e.from_node << ',' << e.to_node << ','
        << e.level;
    if (e.region_right || e.region_left) {
      out << ',';
      if (e.region_right) out << *e.region_right;
      if (e.region_left) out << ',' << *e.region_left;
    }
    out << '\n';
  }
}

void save_network_file(const RoadNetwork& network, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write network file " + path);
  save_network(network, out);
}

RegionAssignment load_regions(std::istream& in, const RoadNetwork* network) {
  RegionAssignment regions;
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "regions line " + std::to_string(lineno);
    auto f = split_fields(line);
    if (f[0] == "REGIONS") {
      if (f.size() != 2) throw Error(where + ": REGIONS record needs a count");
      regions.region_count = parse_int(f[1], where);
      have_header = true;
    } else if (f[0] == "R") {
      if (!have_header) throw Error(where + ": R record before REGIONS header");
      if (f.size() != 3) throw Error(where + ": R record needs node_id,region_id");
      NodeId node = parse_int(f[1], where);
      RegionId region = parse_int(f[2], where);
      if (region < 0 || region >= regions.region_count) {
        throw Error(where + ": region id " + std::to_string(region) +
                    " out of range (count " +
                    std::to_string(regions.region_count) + ")");
      }
      if (network && !network->has_node(node)) {
        throw Error(where + ": unknown node " + std::to_string(node));
      }
      regions.node_region[node] = region;
    } else {
      throw Error(where + ": expected REGIONS or R record, got '" + f[0] + "'");
    }
  }
  if (!have_header) throw Error("regions file missing REGIONS header");
  return regions;
}

RegionAssignment load_regions_file(const std::string& path,
                                   const RoadNetwork* network) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open regions file " + path);
  return load_regions(in, network);
}

void save_regions(const RegionAssignment& regions, std::ostream& out) {
  out << "REGIONS," << regions.region_count << '\n';
  for (const auto& [node, region] : regions.node_region) {
    out << "R," << node << ',' << region << '\n';
  }
}

void save_regions_file(const RegionAssignment& regions,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write regions file " + path);
  save_regions(regions, out);
}

void validate_regions(const RoadNetwork& network,
                      const RegionAssignment& regions) {
  auto check = [&](std::optional<RegionId> region, EdgeId edge) {
    if (region && (*region < 0 || *region >= regions.region_count)) {
      throw Error("edge " + std::to_string(edge) + " references region " +
                  std::to_string(*region) + " outside count " +
                  std::to_string(regions.region_count));
    }
  };
  for (const RoadSegment& e : network.segments()) {
    check(e.region_right, e.id);
    check(e.region_left, e.id);
  }
  for (const auto& [node, region] : regions.node_region) {
    if (region < 0 || region >= regions.region_count) {
      throw Error("node " + std::to_string(node) + " assigned region " +
                  std::to_string(region) + " outside count " +
                  std::to_string(regions.region_count));
    }
  }
}

double level_score(const RoadSegment& segment, double lambda) {
  switch (segment.level) {
    case 1:
      return 1.0 + lambda;
    case 2:
      return 1.0;
    case 3:
      return 1.0 - lambda;
    default:
      throw Error("edge " + std::to_string(segment.id) + " has invalid level " +
                  std::to_string(segment.level));
  }
}

double node_topology_score(const Crossroad& node, const RoadNetwork& network,
                           double lambda) {
  if (node.incident_edges.empty()) {
    throw Error("isolated crossroad " + std::to_string(node.id));
  }
  double score = 0.0;
  for (EdgeId eid : node.incident_edges) {
    score += level_score(network.segment(eid), lambda);
  }
  return score;
}

}  // namespace crrank
