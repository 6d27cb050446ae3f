#include "crrank/propagation.hpp"

#include <algorithm>
#include <cmath>

namespace crrank {

void PropagationConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must be in (0,1)");
  if (!(tol > 0.0)) throw Error("tol must be positive");
  if (max_iter < 1) throw Error("max_iter must be >= 1");
  if (!(lambda >= 0.0 && lambda < 1.0)) throw Error("lambda must be in [0,1)");
}

Vector normalize(const Vector& v) {
  const double sum = v.sum();
  if (!(sum > 0.0)) throw Error("degenerate score vector");
  return v / sum;
}

namespace {

void check_dims(const WeightMatrices& m, const ProfileVectors& p) {
  const auto M = p.L0.size();
  const auto K = p.H0.size();
  const auto N = p.C0.size();
  if (m.X_TP.rows() != K || m.X_TP.cols() != M || m.X_PT.rows() != M ||
      m.X_PT.cols() != K || m.Y_PV.rows() != N || m.Y_PV.cols() != K ||
      m.Y_VP.rows() != K || m.Y_VP.cols() != N) {
    throw Error("weight matrix dimensions do not match the profiles");
  }
}

}  // namespace

std::pair<Vector, Vector> forward_step(const Vector& L,
                                       const WeightMatrices& matrices,
                                       const ProfileVectors& profiles,
                                       double alpha) {
  check_dims(matrices, profiles);
  if (L.size() != profiles.L0.size()) throw Error("L has wrong dimension");
  Vector H = alpha * (matrices.X_TP * L) + (1.0 - alpha) * profiles.H0;
  Vector C = alpha * (matrices.Y_PV * H) + (1.0 - alpha) * profiles.C0;
  return {std::move(H), std::move(C)};
}

std::pair<Vector, Vector> reverse_step(const Vector& C,
                                       const WeightMatrices& matrices,
                                       const ProfileVectors& profiles,
                                       double alpha) {
  check_dims(matrices, profiles);
  if (C.size() != profiles.C0.size()) throw Error("C has wrong dimension");
  Vector H = alpha * (matrices.Y_VP * C) + (1.0 - alpha) * profiles.H0;
  Vector L = alpha * (matrices.X_PT * H) + (1.0 - alpha) * profiles.L0;
  return {std::move(H), std::move(L)};
}

ScoreState run_crrank(const WeightMatrices& matrices,
                      const ProfileVectors& profiles,
                      const PropagationConfig& config,
                      const IterationObserver& observer) {
  config.validate();
  check_dims(matrices, profiles);

  ScoreState state;
  state.L = profiles.L0;
  state.H = profiles.H0;
  state.C = profiles.C0;

  for (int it = 1; it <= config.max_iter; ++it) {
    const Vector prev_l = state.L;
    const Vector prev_h = state.H;
    const Vector prev_c = state.C;

    auto [h_fwd, c_fwd] = forward_step(state.L, matrices, profiles, config.alpha);
    state.H = std::move(h_fwd);
    state.C = std::move(c_fwd);
    if (config.normalize_per_phase) {
      state.H = normalize(state.H);
      state.C = normalize(state.C);
    }

    auto [h_rev, l_rev] = reverse_step(state.C, matrices, profiles, config.alpha);
    state.H = std::move(h_rev);
    state.L = std::move(l_rev);

    state.L = normalize(state.L);
    state.H = normalize(state.H);
    state.C = normalize(state.C);

    state.iteration = it;
    state.last_delta = std::max({(state.L - prev_l).cwiseAbs().maxCoeff(),
                                 (state.H - prev_h).cwiseAbs().maxCoeff(),
                                 (state.C - prev_c).cwiseAbs().maxCoeff()});
    if (observer) observer(state);
    if (state.last_delta < config.tol) break;
  }
  return state;
}

std::vector<RankedEntry> rank(const Vector& scores,
                              std::span<const std::int64_t> ids) {
  if (static_cast<std::size_t>(scores.size()) != ids.size()) {
    throw Error("score and id lists differ in length");
  }
  std::vector<RankedEntry> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out[i] = {ids[i], scores[static_cast<Eigen::Index>(i)], 0};
  }
  std::sort(out.begin(), out.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].rank = static_cast<int>(i) + 1;
  }
  return out;
}

}  // namespace crrank
