#pragma once

// Independent dense reference for the score propagation. Everything here is
// computed with plain nested loops over std::vector matrices, from the
// transition list and the road network directly; none of the library's graph
// or propagation code is reused, so agreement is meaningful.

#include <cstdint>
#include <span>
#include <vector>

#include "crrank/network.hpp"
#include "crrank/trips.hpp"

namespace crrank::testing {

struct DenseScores {
  std::vector<double> L;
  std::vector<double> H;
  std::vector<double> C;
  int iterations = 0;
  double last_delta = 0.0;
};

struct DenseModel {
  // Index maps in the same canonical order the spec fixes: transitions by
  // (origin, destination), paths by (transition, sequence), crossroads by id.
  std::vector<std::pair<RegionId, RegionId>> transitions;
  std::vector<std::vector<NodeId>> path_sequences;
  std::vector<NodeId> crossroads;
  std::vector<std::vector<double>> W;  // M x K
  std::vector<std::vector<double>> U;  // K x N
  std::vector<double> L0, H0, C0;
};

DenseModel build_dense_model(std::span<const Transition> transitions,
                             const RoadNetwork& network, double lambda);

/// Full-cycle forward/reverse iteration with end-of-cycle normalization,
/// run until the max-norm delta drops below tol.
DenseScores dense_crrank(const DenseModel& model, double alpha, double tol,
                         int max_iter);

}  // namespace crrank::testing
