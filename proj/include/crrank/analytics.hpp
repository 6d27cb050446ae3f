#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crrank/baseline.hpp"
#include "crrank/propagation.hpp"
#include "crrank/trips.hpp"

namespace crrank {

/// Ordered histogram with strictly increasing integer x. Counts are stored
/// as doubles so the fit routines also accept exact real-valued data;
/// histograms built by this module always carry whole numbers.
struct Histogram {
  std::vector<std::pair<std::int64_t, double>> bins;
};

/// A fitted curve: model name, named coefficients in a fixed order, and the
/// root-mean-square residual of the fit.
struct FitResult {
  std::string model;
  std::vector<std::pair<std::string, double>> params;
  double rmse = 0.0;

  double param(const std::string& name) const;
};

/// Bin x = visit rank k (1-based), count = flow of the kth most traversed
/// crossroad. Ties in flow break by ascending crossroad id.
Histogram visit_rank_histogram(const FlowTable& flows);

/// Bin x = path length in crossroads, count = trips over paths of that
/// length.
Histogram path_length_histogram(std::span<const Transition> transitions);

/// Least-squares fit of count ~ a * exp(b * x) on log counts, over bins
/// with positive count. rmse is reported in log space. Needs at least two
/// positive bins.
FitResult fit_exponential(const Histogram& hist);

/// Moment fit of a Gaussian: mu and sigma are the count-weighted mean and
/// standard deviation of x; amplitude = total / (sigma * sqrt(2*pi)) for
/// unit bin width. rmse is against the fitted curve in count space.
/// Throws "degenerate distribution" when all mass sits in one bin.
FitResult fit_gaussian(const Histogram& hist);

void write_histogram_csv(const Histogram& hist, std::ostream& out);
void write_fit_json(const FitResult& fit, std::ostream& out);

struct RankDeltaRow {
  std::int64_t entity_id = 0;
  int initial_rank = 0;
  int final_rank = 0;
  int rank_delta = 0;  // initial - final; positive means the rank improved
};

/// Per-entity rank movement between two rankings over the same id set,
/// sorted by final rank. Throws on mismatched id sets.
std::vector<RankDeltaRow> rank_delta_report(
    std::span<const RankedEntry> initial, std::span<const RankedEntry> final_);

void write_rank_delta_csv(std::span<const RankDeltaRow> rows,
                          std::ostream& out);

}  // namespace crrank
