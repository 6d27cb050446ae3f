#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "crrank/graph.hpp"

namespace crrank {

struct PropagationConfig {
  double alpha = 0.85;   // damping weight of the propagated term
  double tol = 1e-9;     // max-norm convergence threshold per full iteration
  int max_iter = 200;
  double lambda = 0.2;   // level-score parameter, used when seeding C0
  bool normalize_per_phase = false;

  void validate() const;
};

/// Scores after an iteration: L over transitions, H over paths, C over
/// crossroads. last_delta is the max-norm change of (L, H, C) across the
/// most recent full iteration.
struct ScoreState {
  Vector L;
  Vector H;
  Vector C;
  int iteration = 0;
  double last_delta = std::numeric_limits<double>::infinity();

  bool converged(double tol) const { return last_delta < tol; }
};

/// v / sum(v). Throws "degenerate score vector" when the sum is zero.
Vector normalize(const Vector& v);

/// Forward phase: H = alpha*X_TP*L + (1-alpha)*H0, then
/// C = alpha*Y_PV*H + (1-alpha)*C0 from the new H.
std::pair<Vector, Vector> forward_step(const Vector& L,
                                       const WeightMatrices& matrices,
                                       const ProfileVectors& profiles,
                                       double alpha);

/// Reverse phase: H = alpha*Y_VP*C + (1-alpha)*H0, then
/// L = alpha*X_PT*H + (1-alpha)*L0 from the new H.
std::pair<Vector, Vector> reverse_step(const Vector& C,
                                       const WeightMatrices& matrices,
                                       const ProfileVectors& profiles,
                                       double alpha);

using IterationObserver = std::function<void(const ScoreState&)>;

/// Runs the alternating forward/reverse propagation from the profile seeds
/// until the full-iteration delta drops below tol or max_iter is reached.
/// Hitting max_iter is not an error; the state reports the last delta.
/// The observer, when given, sees the state after every full iteration.
ScoreState run_crrank(const WeightMatrices& matrices,
                      const ProfileVectors& profiles,
                      const PropagationConfig& config,
                      const IterationObserver& observer = nullptr);

struct RankedEntry {
  std::int64_t id = 0;
  double score = 0.0;
  int rank = 0;
};

/// Orders scores descending with ties broken by ascending id; ranks are
/// 1-based and distinct.
std::vector<RankedEntry> rank(const Vector& scores,
                              std::span<const std::int64_t> ids);

}  // namespace crrank
