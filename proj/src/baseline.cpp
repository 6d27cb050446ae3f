#include "crrank/baseline.hpp"

#include <set>

namespace crrank {

FlowTable crossroad_flow(std::span<const Transition> transitions) {
  FlowTable flow;
  for (const Transition& t : transitions) {
    for (const PathRecord& p : t.paths) {
      std::set<NodeId> distinct(p.sequence.begin(), p.sequence.end());
      for (NodeId n : distinct) flow[n] += p.trip_count;
    }
  }
  return flow;
}

std::vector<RankedEntry> baseline_rank(const FlowTable& flows,
                                       const RoadNetwork& network,
                                       double lambda) {
  if (flows.empty()) throw Error("empty flow table");

  double flow_total = 0.0;
  double topo_total = 0.0;
  std::vector<std::int64_t> ids;
  std::vector<double> topo;
  ids.reserve(flows.size());
  topo.reserve(flows.size());
  for (const auto& [id, count] : flows) {
    ids.push_back(id);
    topo.push_back(node_topology_score(network.node(id), network, lambda));
    flow_total += static_cast<double>(count);
    topo_total += topo.back();
  }

  Vector scores(static_cast<Eigen::Index>(flows.size()));
  Eigen::Index i = 0;
  for (const auto& [id, count] : flows) {
    scores[i] = (static_cast<double>(count) / flow_total) *
                (topo[static_cast<std::size_t>(i)] / topo_total);
    ++i;
  }
  scores = normalize(scores);
  return rank(scores, ids);
}

}  // namespace crrank
