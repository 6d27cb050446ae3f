#include "crrank/graph.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

namespace crrank {

TripartiteGraph build_graph(std::span<const Transition> transitions) {
  if (transitions.empty()) throw Error("empty graph");

  std::vector<const Transition*> ordered;
  ordered.reserve(transitions.size());
  for (const Transition& t : transitions) {
    if (t.paths.empty()) {
      throw Error("transition (" + std::to_string(t.origin) + "," +
                  std::to_string(t.destination) + ") has no paths");
    }
    ordered.push_back(&t);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Transition* a, const Transition* b) {
              return OdPair{a->origin, a->destination} <
                     OdPair{b->origin, b->destination};
            });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i - 1]->origin == ordered[i]->origin &&
        ordered[i - 1]->destination == ordered[i]->destination) {
      throw Error("duplicate transition (" + std::to_string(ordered[i]->origin) +
                  "," + std::to_string(ordered[i]->destination) + ")");
    }
  }

  TripartiteGraph g;
  std::set<NodeId> node_set;
  for (std::size_t m = 0; m < ordered.size(); ++m) {
    const Transition& t = *ordered[m];
    g.transitions.push_back({t.origin, t.destination});
    g.transition_trips.push_back(t.trip_count);

    std::vector<const PathRecord*> paths;
    for (const PathRecord& p : t.paths) {
      if (p.trip_count < 1) throw Error("path with zero trips");
      if (p.sequence.size() < 2) throw Error("path shorter than 2 crossroads");
      paths.push_back(&p);
    }
    std::sort(paths.begin(), paths.end(),
              [](const PathRecord* a, const PathRecord* b) {
                return a->sequence < b->sequence;
              });
    std::int64_t tau = 0;
    for (const PathRecord* p : paths) {
      g.paths.push_back({static_cast<std::int32_t>(m), p->sequence, p->trip_count});
      tau += p->trip_count;
      node_set.insert(p->sequence.begin(), p->sequence.end());
    }
    if (tau != t.trip_count) {
      throw Error("transition trip count " + std::to_string(t.trip_count) +
                  " does not match its paths (" + std::to_string(tau) + ")");
    }
  }

  g.crossroads.assign(node_set.begin(), node_set.end());
  for (std::int32_t n = 0; n < static_cast<std::int32_t>(g.crossroads.size()); ++n) {
    g.crossroad_index.emplace(g.crossroads[n], n);
  }

  const auto M = static_cast<Eigen::Index>(g.transitions.size());
  const auto K = static_cast<Eigen::Index>(g.paths.size());
  const auto N = static_cast<Eigen::Index>(g.crossroads.size());

  std::vector<Eigen::Triplet<double>> w_triplets;
  std::vector<Eigen::Triplet<double>> u_triplets;
  for (Eigen::Index k = 0; k < K; ++k) {
    const GraphPath& p = g.paths[static_cast<std::size_t>(k)];
    w_triplets.emplace_back(p.transition, k, static_cast<double>(p.trip_count));
    std::set<std::int32_t> cols;
    for (NodeId n : p.sequence) cols.insert(g.crossroad_index.at(n));
    for (std::int32_t n : cols) u_triplets.emplace_back(k, n, 1.0);
  }
  g.W.resize(M, K);
  g.W.setFromTriplets(w_triplets.begin(), w_triplets.end());
  g.U.resize(K, N);
  g.U.setFromTriplets(u_triplets.begin(), u_triplets.end());
  return g;
}

Vector profile_l0(const TripartiteGraph& graph) {
  const auto M = static_cast<Eigen::Index>(graph.transition_trips.size());
  Vector l0(M);
  double total = 0.0;
  for (Eigen::Index m = 0; m < M; ++m) {
    l0[m] = static_cast<double>(graph.transition_trips[static_cast<std::size_t>(m)]);
    total += l0[m];
  }
  if (total <= 0.0) throw Error("graph has no trips");
  return l0 / total;
}

Vector profile_h0(const TripartiteGraph& graph) {
  const auto K = static_cast<Eigen::Index>(graph.paths.size());
  Vector h0(K);
  double total = 0.0;
  for (Eigen::Index k = 0; k < K; ++k) {
    h0[k] = static_cast<double>(graph.paths[static_cast<std::size_t>(k)].trip_count);
    total += h0[k];
  }
  if (total <= 0.0) throw Error("graph has no trips");
  return h0 / total;
}

Vector profile_c0(const TripartiteGraph& graph, const RoadNetwork& network,
                  double lambda) {
  const auto N = static_cast<Eigen::Index>(graph.crossroads.size());
  Vector c0(N);
  double total = 0.0;
  for (Eigen::Index n = 0; n < N; ++n) {
    NodeId id = graph.crossroads[static_cast<std::size_t>(n)];
    c0[n] = node_topology_score(network.node(id), network, lambda);
    total += c0[n];
  }
  if (total <= 0.0) throw Error("degenerate topology scores");
  return c0 / total;
}

ProfileVectors build_profiles(const TripartiteGraph& graph,
                              const RoadNetwork& network, double lambda) {
  return {profile_l0(graph), profile_h0(graph),
          profile_c0(graph, network, lambda)};
}

SparseMatrix weight_x_tp(const TripartiteGraph& graph) {
  const auto M = graph.transition_count();
  const auto K = graph.path_count();
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index k = 0; k < K; ++k) {
    const GraphPath& p = graph.paths[static_cast<std::size_t>(k)];
    double tau = static_cast<double>(
        graph.transition_trips[static_cast<std::size_t>(p.transition)]);
    triplets.emplace_back(k, p.transition,
                          static_cast<double>(p.trip_count) / tau);
  }
  SparseMatrix x_tp(K, M);
  x_tp.setFromTriplets(triplets.begin(), triplets.end());
  return x_tp;
}

std::pair<SparseMatrix, SparseMatrix> weight_y(const TripartiteGraph& graph,
                                               const Vector& C0,
                                               const Vector& H0) {
  const auto K = graph.path_count();
  const auto N = graph.crossroad_count();
  if (C0.size() != N || H0.size() != K) {
    throw Error("profile vector sizes do not match the graph");
  }

  // Per-crossroad sum of H0 over the paths through it (Y_VP denominators).
  Vector h0_at_crossroad = Vector::Zero(N);
  for (Eigen::Index n = 0; n < N; ++n) {
    for (SparseMatrix::InnerIterator it(graph.U, n); it; ++it) {
      h0_at_crossroad[n] += H0[it.row()];
    }
  }

  std::vector<Eigen::Triplet<double>> pv_triplets;
  std::vector<Eigen::Triplet<double>> vp_triplets;
  for (Eigen::Index n = 0; n < N; ++n) {
    if (h0_at_crossroad[n] <= 0.0) {
      // Impossible for a graph crossroad: V holds only traversed nodes.
      throw Error("crossroad " +
                  std::to_string(graph.crossroads[static_cast<std::size_t>(n)]) +
                  " lies on no path");
    }
    for (SparseMatrix::InnerIterator it(graph.U, n); it; ++it) {
      const auto k = it.row();
      pv_triplets.emplace_back(n, k, C0[n]);
      vp_triplets.emplace_back(k, n, H0[k] / h0_at_crossroad[n]);
    }
  }
  SparseMatrix y_pv(N, K);
  y_pv.setFromTriplets(pv_triplets.begin(), pv_triplets.end());
  SparseMatrix y_vp(K, N);
  y_vp.setFromTriplets(vp_triplets.begin(), vp_triplets.end());
  return {std::move(y_pv), std::move(y_vp)};
}

WeightMatrices build_weight_matrices(const TripartiteGraph& graph,
                                     const ProfileVectors& profiles) {
  WeightMatrices w;
  w.X_TP = weight_x_tp(graph);
  w.X_PT = SparseMatrix(w.X_TP.transpose());
  auto [y_pv, y_vp] = weight_y(graph, profiles.C0, profiles.H0);
  w.Y_PV = std::move(y_pv);
  w.Y_VP = std::move(y_vp);
  return w;
}

void dump_graph_json(const TripartiteGraph& graph,
                     const ProfileVectors& profiles, std::ostream& out) {
  nlohmann::json j;
  j["M"] = graph.transition_count();
  j["K"] = graph.path_count();
  j["N"] = graph.crossroad_count();

  auto triplets = [](const SparseMatrix& m, bool integer_values) {
    nlohmann::json list = nlohmann::json::array();
    for (Eigen::Index outer = 0; outer < m.outerSize(); ++outer) {
      for (SparseMatrix::InnerIterator it(m, outer); it; ++it) {
        nlohmann::json entry = nlohmann::json::array();
        entry.push_back(it.row());
        entry.push_back(it.col());
        if (integer_values) {
          entry.push_back(static_cast<std::int64_t>(it.value()));
        } else {
          entry.push_back(it.value());
        }
        list.push_back(std::move(entry));
      }
    }
    return list;
  };
  j["W"] = triplets(graph.W, true);
  j["U"] = triplets(graph.U, true);
  j["L0"] = std::vector<double>(profiles.L0.begin(), profiles.L0.end());
  j["H0"] = std::vector<double>(profiles.H0.begin(), profiles.H0.end());
  j["C0"] = std::vector<double>(profiles.C0.begin(), profiles.C0.end());
  out << j.dump(2) << '\n';
}

}  // namespace crrank
