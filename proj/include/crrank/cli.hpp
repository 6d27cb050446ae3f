#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crrank/export.hpp"
#include "crrank/synthgen.hpp"

namespace crrank {

/// Shared command configuration. Defaults: lambda 0.2, alpha 0.85, tol 1e-9,
/// max_iter 200, min_trips 3, per-phase normalization off, no time filter.
struct RunConfig {
  double lambda = 0.2;
  double alpha = 0.85;
  double tol = 1e-9;
  int max_iter = 200;
  std::int64_t min_trips = 3;
  bool normalize_per_phase = false;
  std::string time_window;  // "HH:MM-HH:MM[,HH:MM-HH:MM]", empty = no filter

  std::string network_path;
  std::string regions_path;
  std::string trips_path;
  std::string out_dir;

  std::uint64_t seed = 0;
  std::string format = "csv";  // export format: csv | json | geojson
  bool dump_graph = false;
  TierSpec tiers;
};

struct SynthConfig {
  bool figure1 = false;
  GridSpec grid;
  std::vector<OdDemand> demand;
  std::uint64_t seed = 0;
  std::string out_dir;
};

// Each command returns a process exit status. On failure it removes the
// files it had started writing, reports on stderr and returns nonzero.
int cmd_rank(const RunConfig& config);
int cmd_baseline(const RunConfig& config);
int cmd_stats(const RunConfig& config);
int cmd_synth(const SynthConfig& config);
int cmd_export(const RunConfig& config);

/// Parses an --od flag value "origin:destination:count[:policy]" with policy
/// one of shortest | random.
OdDemand parse_od_demand(const std::string& text);

}  // namespace crrank
