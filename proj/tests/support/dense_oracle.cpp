#include "support/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace crrank::testing {

namespace {

// The level-score table, written out independently of the library.
double oracle_level_score(int level, double lambda) {
  if (level == 1) return 1.0 + lambda;
  if (level == 2) return 1.0;
  if (level == 3) return 1.0 - lambda;
  throw std::runtime_error("oracle: bad level");
}

double oracle_topology_score(NodeId id, const RoadNetwork& network,
                             double lambda) {
  double score = 0.0;
  int incident = 0;
  for (const RoadSegment& e : network.segments()) {
    if (e.from_node == id || e.to_node == id) {
      score += oracle_level_score(e.level, lambda);
      ++incident;
    }
  }
  if (incident == 0) throw std::runtime_error("oracle: isolated crossroad");
  return score;
}

}  // namespace

DenseModel build_dense_model(std::span<const Transition> transitions,
                             const RoadNetwork& network, double lambda) {
  DenseModel model;

  struct PathEntry {
    std::size_t transition;
    std::vector<NodeId> sequence;
    double count;
  };
  std::vector<const Transition*> ordered;
  for (const Transition& t : transitions) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](const Transition* a, const Transition* b) {
              return std::pair{a->origin, a->destination} <
                     std::pair{b->origin, b->destination};
            });

  std::vector<PathEntry> paths;
  std::set<NodeId> nodes;
  for (std::size_t m = 0; m < ordered.size(); ++m) {
    model.transitions.emplace_back(ordered[m]->origin, ordered[m]->destination);
    std::vector<const PathRecord*> sorted_paths;
    for (const PathRecord& p : ordered[m]->paths) sorted_paths.push_back(&p);
    std::sort(sorted_paths.begin(), sorted_paths.end(),
              [](const PathRecord* a, const PathRecord* b) {
                return a->sequence < b->sequence;
              });
    for (const PathRecord* p : sorted_paths) {
      paths.push_back({m, p->sequence, static_cast<double>(p->trip_count)});
      nodes.insert(p->sequence.begin(), p->sequence.end());
    }
  }
  model.crossroads.assign(nodes.begin(), nodes.end());

  const std::size_t M = model.transitions.size();
  const std::size_t K = paths.size();
  const std::size_t N = model.crossroads.size();
  model.W.assign(M, std::vector<double>(K, 0.0));
  model.U.assign(K, std::vector<double>(N, 0.0));
  for (std::size_t k = 0; k < K; ++k) {
    model.path_sequences.push_back(paths[k].sequence);
    model.W[paths[k].transition][k] = paths[k].count;
    for (NodeId id : paths[k].sequence) {
      std::size_t n = static_cast<std::size_t>(
          std::lower_bound(model.crossroads.begin(), model.crossroads.end(), id) -
          model.crossroads.begin());
      model.U[k][n] = 1.0;
    }
  }

  // Profiles straight from the definitions.
  model.L0.assign(M, 0.0);
  model.H0.assign(K, 0.0);
  model.C0.assign(N, 0.0);
  double total_tau = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t k = 0; k < K; ++k) model.L0[m] += model.W[m][k];
    total_tau += model.L0[m];
  }
  for (std::size_t m = 0; m < M; ++m) model.L0[m] /= total_tau;

  double total_eta = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    model.H0[k] = paths[k].count;
    total_eta += model.H0[k];
  }
  for (std::size_t k = 0; k < K; ++k) model.H0[k] /= total_eta;

  double total_topo = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    model.C0[n] = oracle_topology_score(model.crossroads[n], network, lambda);
    total_topo += model.C0[n];
  }
  for (std::size_t n = 0; n < N; ++n) model.C0[n] /= total_topo;

  return model;
}

DenseScores dense_crrank(const DenseModel& model, double alpha, double tol,
                         int max_iter) {
  const std::size_t M = model.transitions.size();
  const std::size_t K = model.path_sequences.size();
  const std::size_t N = model.crossroads.size();

  // tau per transition and the four weight matrices, dense.
  std::vector<double> tau(M, 0.0);
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t k = 0; k < K; ++k) tau[m] += model.W[m][k];
  }
  std::vector<std::vector<double>> x_tp(K, std::vector<double>(M, 0.0));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t m = 0; m < M; ++m) x_tp[k][m] = model.W[m][k] / tau[m];
  }
  std::vector<std::vector<double>> y_pv(N, std::vector<double>(K, 0.0));
  std::vector<std::vector<double>> y_vp(K, std::vector<double>(N, 0.0));
  for (std::size_t n = 0; n < N; ++n) {
    double h0_sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) h0_sum += model.U[k][n] * model.H0[k];
    for (std::size_t k = 0; k < K; ++k) {
      y_pv[n][k] = model.U[k][n] * model.C0[n];
      y_vp[k][n] = model.U[k][n] * model.H0[k] / h0_sum;
    }
  }

  auto normalize = [](std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    for (double& x : v) x /= sum;
  };

  DenseScores s;
  s.L = model.L0;
  s.H = model.H0;
  s.C = model.C0;
  for (int it = 1; it <= max_iter; ++it) {
    const auto prev_l = s.L;
    const auto prev_h = s.H;
    const auto prev_c = s.C;

    // forward: H from L, then C from the new H
    for (std::size_t k = 0; k < K; ++k) {
      double acc = 0.0;
      for (std::size_t m = 0; m < M; ++m) acc += x_tp[k][m] * prev_l[m];
      s.H[k] = alpha * acc + (1.0 - alpha) * model.H0[k];
    }
    for (std::size_t n = 0; n < N; ++n) {
      double acc = 0.0;
      for (std::size_t k = 0; k < K; ++k) acc += y_pv[n][k] * s.H[k];
      s.C[n] = alpha * acc + (1.0 - alpha) * model.C0[n];
    }
    // reverse: H from C, then L from the new H
    for (std::size_t k = 0; k < K; ++k) {
      double acc = 0.0;
      for (std::size_t n = 0; n < N; ++n) acc += y_vp[k][n] * s.C[n];
      s.H[k] = alpha * acc + (1.0 - alpha) * model.H0[k];
    }
    for (std::size_t m = 0; m < M; ++m) {
      double acc = 0.0;
      for (std::size_t k = 0; k < K; ++k) acc += x_tp[k][m] * s.H[k];
      s.L[m] = alpha * acc + (1.0 - alpha) * model.L0[m];
    }
    normalize(s.L);
    normalize(s.H);
    normalize(s.C);

    double delta = 0.0;
    for (std::size_t m = 0; m < M; ++m)
      delta = std::max(delta, std::abs(s.L[m] - prev_l[m]));
    for (std::size_t k = 0; k < K; ++k)
      delta = std::max(delta, std::abs(s.H[k] - prev_h[k]));
    for (std::size_t n = 0; n < N; ++n)
      delta = std::max(delta, std::abs(s.C[n] - prev_c[n]));
    s.iterations = it;
    s.last_delta = delta;
    if (delta < tol) break;
  }
  return s;
}

}  // namespace crrank::testing
