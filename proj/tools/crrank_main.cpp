#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "crrank/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"crrank: rank network-wide important crossroads from trips"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(false);
  app.set_config("--config", "", "key=value config file, keys = long flag names")
      ->envname("CRRANK_CONFIG");

  crrank::RunConfig config;
  std::string time_window;
  std::vector<int> tiers;

  app.add_option("--network", config.network_path, "network file");
  app.add_option("--regions", config.regions_path, "region assignment file");
  app.add_option("--trips", config.trips_path, "trips file");
  app.add_option("--out-dir", config.out_dir, "output directory");
  app.add_option("--alpha", config.alpha, "propagation damping in (0,1)")
      ->capture_default_str();
  app.add_option("--lambda", config.lambda, "road level score parameter")
      ->capture_default_str();
  app.add_option("--tol", config.tol, "convergence threshold")
      ->capture_default_str();
  app.add_option("--max-iter", config.max_iter, "iteration cap")
      ->capture_default_str();
  app.add_option("--min-trips", config.min_trips,
                 "drop transitions with fewer trips")
      ->capture_default_str();
  app.add_flag("--normalize-per-phase", config.normalize_per_phase,
               "normalize after each half phase as well");
  app.add_option("--time-window", config.time_window,
                 "inclusive time-of-day filter HH:MM-HH:MM[,HH:MM-HH:MM]");
  app.add_option("--seed", config.seed, "seed for randomized generation")
      ->capture_default_str();
  app.add_option("--format", config.format, "export format: csv|json|geojson")
      ->capture_default_str();
  app.add_option("--tiers", tiers, "export tier rank bounds (three values)")
      ->expected(3);

  auto* rank_cmd = app.add_subcommand("rank", "run the score propagation");
  rank_cmd->add_flag("--dump-graph", config.dump_graph,
                     "also write the tripartite graph as JSON");
  auto* baseline_cmd =
      app.add_subcommand("baseline", "rank crossroads by flow x topology");
  auto* stats_cmd =
      app.add_subcommand("stats", "distribution histograms and fits");
  auto* export_cmd =
      app.add_subcommand("export", "re-emit a finished ranking as csv/json/geojson");

  crrank::SynthConfig synth;
  std::vector<std::string> od_flags;
  auto* synth_cmd =
      app.add_subcommand("synth", "generate a synthetic grid network and trips");
  synth_cmd->add_flag("--figure1", synth.figure1,
                      "emit the hub-vs-local motivating fixture");
  synth_cmd->add_option("--rows", synth.grid.rows, "grid rows")
      ->capture_default_str();
  synth_cmd->add_option("--cols", synth.grid.cols, "grid columns")
      ->capture_default_str();
  synth_cmd->add_option("--boundary-level", synth.grid.boundary_level,
                        "level of grid-boundary segments")
      ->capture_default_str();
  synth_cmd->add_option("--interior-level", synth.grid.interior_level,
                        "level of interior segments")
      ->capture_default_str();
  synth_cmd->add_option("--od", od_flags,
                        "demand origin:destination:count[:policy], repeatable");

  CLI11_PARSE(app, argc, argv);

  if (tiers.size() == 3) config.tiers = {tiers[0], tiers[1], tiers[2]};

  try {
    if (rank_cmd->parsed()) return crrank::cmd_rank(config);
    if (baseline_cmd->parsed()) return crrank::cmd_baseline(config);
    if (stats_cmd->parsed()) return crrank::cmd_stats(config);
    if (export_cmd->parsed()) return crrank::cmd_export(config);
    if (synth_cmd->parsed()) {
      synth.seed = config.seed;
      synth.out_dir = config.out_dir;
      for (const std::string& flag : od_flags) {
        synth.demand.push_back(crrank::parse_od_demand(flag));
      }
      return crrank::cmd_synth(synth);
    }
  } catch (const std::exception& e) {
    std::cerr << "crrank: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
