#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "crrank/network.hpp"
#include "crrank/trips.hpp"

namespace crrank {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// One path node of the tripartite graph: which transition it belongs to,
/// its crossroad sequence and its trip count eta.
struct GraphPath {
  std::int32_t transition = 0;
  std::vector<NodeId> sequence;
  std::int64_t trip_count = 0;
};

/// The trip network as a tripartite graph over transitions (size M), paths
/// (size K) and crossroads (size N). W is the M x K matrix of trip counts
/// w(m,k); U is the K x N binary incidence of crossroads in paths. Index
/// order is deterministic: transitions by (origin, destination), paths by
/// (transition, sequence), crossroads by ascending id.
struct TripartiteGraph {
  std::vector<OdPair> transitions;
  std::vector<std::int64_t> transition_trips;  // tau per transition
  std::vector<GraphPath> paths;
  std::vector<NodeId> crossroads;
  std::map<NodeId, std::int32_t> crossroad_index;
  SparseMatrix W;  // M x K
  SparseMatrix U;  // K x N

  Eigen::Index transition_count() const { return W.rows(); }
  Eigen::Index path_count() const { return W.cols(); }
  Eigen::Index crossroad_count() const { return U.cols(); }
};

/// Seed score vectors: L0 over transitions (trip-count shares), H0 over
/// paths (trip-count shares), C0 over crossroads (topology-score shares).
/// Each sums to 1.
struct ProfileVectors {
  Vector L0;
  Vector H0;
  Vector C0;
};

/// The four propagation matrices. X_TP is the column-normalized W (columns
/// sum to 1 per transition); X_PT is its transpose. Y_PV carries C0 along
/// incidences (columns do not generally sum to 1); Y_VP shares each
/// crossroad's mass among its paths by H0 weight (columns sum to 1).
struct WeightMatrices {
  SparseMatrix X_TP;  // K x M
  SparseMatrix X_PT;  // M x K
  SparseMatrix Y_PV;  // N x K
  SparseMatrix Y_VP;  // K x N
};

/// Assembles the tripartite graph from grouped transitions.
/// Throws "empty graph" on an empty input.
TripartiteGraph build_graph(std::span<const Transition> transitions);

Vector profile_l0(const TripartiteGraph& graph);
Vector profile_h0(const TripartiteGraph& graph);

/// C0 over the graph's crossroads: node_topology_score normalized over the
/// crossroads that appear in at least one path.
Vector profile_c0(const TripartiteGraph& graph, const RoadNetwork& network,
                  double lambda);

ProfileVectors build_profiles(const TripartiteGraph& graph,
                              const RoadNetwork& network, double lambda);

/// Column-normalized transition-to-path matrix, K x M.
SparseMatrix weight_x_tp(const TripartiteGraph& graph);

/// (Y_PV, Y_VP) from the incidence and the profile vectors.
std::pair<SparseMatrix, SparseMatrix> weight_y(const TripartiteGraph& graph,
                                               const Vector& C0,
                                               const Vector& H0);

WeightMatrices build_weight_matrices(const TripartiteGraph& graph,
                                     const ProfileVectors& profiles);

/// Debug/exchange dump: JSON with M, K, N, the W and U triplet lists and
/// the three profile vectors.
void dump_graph_json(const TripartiteGraph& graph,
                     const ProfileVectors& profiles, std::ostream& out);

}  // namespace crrank
