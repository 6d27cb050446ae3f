#include "crrank/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include <nlohmann/json.hpp>

#include "crrank/textio.hpp"

namespace crrank {

double FitResult::param(const std::string& name) const {
  for (const auto& [key, value] : params) {
    if (key == name) return value;
  }
  throw Error("fit has no parameter '" + name + "'");
}

Histogram visit_rank_histogram(const FlowTable& flows) {
  if (flows.empty()) throw Error("empty flow table");
  std::vector<std::pair<NodeId, std::int64_t>> ordered(flows.begin(),
                                                       flows.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Histogram hist;
  hist.bins.reserve(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    hist.bins.emplace_back(static_cast<std::int64_t>(i) + 1,
                           static_cast<double>(ordered[i].second));
  }
  return hist;
}

Histogram path_length_histogram(std::span<const Transition> transitions) {
  if (transitions.empty()) throw Error("no transitions");
  std::map<std::int64_t, double> counts;
  for (const Transition& t : transitions) {
    for (const PathRecord& p : t.paths) {
      counts[static_cast<std::int64_t>(p.sequence.size())] +=
          static_cast<double>(p.trip_count);
    }
  }
  Histogram hist;
  hist.bins.assign(counts.begin(), counts.end());
  return hist;
}

FitResult fit_exponential(const Histogram& hist) {
  std::vector<std::pair<double, double>> pts;  // (x, ln count)
  for (const auto& [x, count] : hist.bins) {
    if (count > 0.0) pts.emplace_back(static_cast<double>(x), std::log(count));
  }
  if (pts.size() < 2) {
    throw Error("exponential fit needs at least 2 positive bins");
  }

  const double n = static_cast<double>(pts.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : pts) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx == 0.0) throw Error("exponential fit needs distinct x values");
  const double b = sxy / sxx;
  const double ln_a = mean_y - b * mean_x;

  double ss = 0.0;
  for (const auto& [x, y] : pts) {
    const double r = y - (ln_a + b * x);
    ss += r * r;
  }
  FitResult fit;
  fit.model = "exponential";
  fit.params = {{"a", std::exp(ln_a)}, {"b", b}};
  fit.rmse = std::sqrt(ss / n);
  return fit;
}

FitResult fit_gaussian(const Histogram& hist) {
  std::size_t positive = 0;
  double total = 0.0;
  for (const auto& [x, count] : hist.bins) {
    if (count > 0.0) ++positive;
    total += count;
  }
  if (positive < 2 || total <= 0.0) {
    throw Error("degenerate distribution: gaussian fit needs mass in at least 2 bins");
  }

  double mu = 0.0;
  for (const auto& [x, count] : hist.bins) {
    mu += count * static_cast<double>(x);
  }
  mu /= total;
  double var = 0.0;
  for (const auto& [x, count] : hist.bins) {
    const double d = static_cast<double>(x) - mu;
    var += count * d * d;
  }
  var /= total;
  const double sigma = std::sqrt(var);
  if (sigma == 0.0) throw Error("degenerate distribution: zero variance");
  const double amplitude = total / (sigma * std::sqrt(2.0 * std::numbers::pi));

  double ss = 0.0;
  for (const auto& [x, count] : hist.bins) {
    const double d = static_cast<double>(x) - mu;
    const double fitted = amplitude * std::exp(-d * d / (2.0 * var));
    ss += (count - fitted) * (count - fitted);
  }
  FitResult fit;
  fit.model = "gaussian";
  fit.params = {{"mu", mu}, {"sigma", sigma}, {"amplitude", amplitude}};
  fit.rmse = std::sqrt(ss / static_cast<double>(hist.bins.size()));
  return fit;
}

void write_histogram_csv(const Histogram& hist, std::ostream& out) {
  out << "x,count\n";
  for (const auto& [x, count] : hist.bins) {
    out << x << ',' << format_double(count) << '\n';
  }
}

void write_fit_json(const FitResult& fit, std::ostream& out) {
  nlohmann::json j;
  j["model"] = fit.model;
  j["params"] = nlohmann::json::object();
  for (const auto& [name, value] : fit.params) {
    j["params"][name] = value;
  }
  j["rmse"] = fit.rmse;
  out << j.dump(2) << '\n';
}

std::vector<RankDeltaRow> rank_delta_report(
    std::span<const RankedEntry> initial, std::span<const RankedEntry> final_) {
  if (initial.size() != final_.size()) {
    throw Error("initial and final rankings differ in size");
  }
  std::map<std::int64_t, int> initial_rank;
  for (const RankedEntry& e : initial) initial_rank[e.id] = e.rank;

  std::vector<RankDeltaRow> rows;
  rows.reserve(final_.size());
  for (const RankedEntry& e : final_) {
    auto it = initial_rank.find(e.id);
    if (it == initial_rank.end()) {
      throw Error("id " + std::to_string(e.id) + " missing from initial ranking");
    }
    rows.push_back({e.id, it->second, e.rank, it->second - e.rank});
  }
  std::sort(rows.begin(), rows.end(), [](const RankDeltaRow& a, const RankDeltaRow& b) {
    return a.final_rank < b.final_rank;
  });
  return rows;
}

void write_rank_delta_csv(std::span<const RankDeltaRow> rows,
                          std::ostream& out) {
  out << "entity_id,initial_rank,final_rank,rank_delta\n";
  for (const RankDeltaRow& r : rows) {
    out << r.entity_id << ',' << r.initial_rank << ',' << r.final_rank << ','
        << r.rank_delta << '\n';
  }
}

}  // namespace crrank
