#include "crrank/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "crrank/analytics.hpp"
#include "crrank/baseline.hpp"
#include "crrank/graph.hpp"
#include "crrank/propagation.hpp"
#include "crrank/textio.hpp"

namespace crrank {

namespace {

namespace fs = std::filesystem;

/// Tracks the files a command writes so a failure can remove its partial
/// outputs instead of leaving stale artifacts behind.
class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) {
    if (dir_.empty()) throw Error("no --out-dir given");
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::ofstream open(const std::string& name) {
    fs::path p = dir_ / name;
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    written_.push_back(p);
    return out;
  }

  void discard_all() {
    for (const fs::path& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    written_.clear();
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

struct PipelineData {
  RoadNetwork network;
  RegionAssignment regions;
  std::vector<std::pair<Trip, OdPair>> resolved;
  std::vector<RejectRecord> rejects;
  std::vector<Transition> transitions;
  std::size_t trips_loaded = 0;
  std::size_t trips_after_time_filter = 0;
  std::size_t trips_intra_region = 0;
  std::int64_t trips_grouped = 0;
};

PipelineData load_pipeline(const RunConfig& config) {
  PipelineData data;
  data.network = load_network_file(config.network_path);
  data.regions = load_regions_file(config.regions_path, &data.network);
  validate_regions(data.network, data.regions);

  TripLoadResult loaded = load_trips_file(config.trips_path, data.network);
  data.rejects = std::move(loaded.rejects);
  data.trips_loaded = loaded.trips.size();

  auto windows = parse_time_windows(config.time_window);
  std::vector<Trip> trips =
      filter_by_time_windows(std::move(loaded.trips), windows);
  data.trips_after_time_filter = trips.size();

  for (Trip& trip : trips) {
    try {
      OdPair od = assign_od(trip, data.network, data.regions);
      if (od.origin == od.destination) ++data.trips_intra_region;
      data.resolved.emplace_back(std::move(trip), od);
    } catch (const Error& e) {
      data.rejects.push_back({trip.id, e.what()});
    }
  }

  data.transitions = group_transitions(data.resolved, config.min_trips);
  for (const Transition& t : data.transitions) data.trips_grouped += t.trip_count;
  return data;
}

nlohmann::json config_json(const RunConfig& config) {
  nlohmann::json j;
  j["alpha"] = config.alpha;
  j["lambda"] = config.lambda;
  j["tol"] = config.tol;
  j["max_iter"] = config.max_iter;
  j["min_trips"] = config.min_trips;
  j["normalize_per_phase"] = config.normalize_per_phase;
  j["time_window"] = config.time_window;
  j["network"] = config.network_path;
  j["regions"] = config.regions_path;
  j["trips"] = config.trips_path;
  j["out_dir"] = config.out_dir;
  return j;
}

nlohmann::json trips_json(const PipelineData& data) {
  nlohmann::json j;
  j["loaded"] = data.trips_loaded;
  j["rejected"] = data.rejects.size();
  j["after_time_filter"] = data.trips_after_time_filter;
  j["intra_region"] = data.trips_intra_region;  // kept, with origin == destination
  j["grouped"] = data.trips_grouped;
  return j;
}

std::vector<std::int64_t> index_ids(std::size_t count) {
  std::vector<std::int64_t> ids(count);
  for (std::size_t i = 0; i < count; ++i) ids[i] = static_cast<std::int64_t>(i);
  return ids;
}

int fail(OutputDir& out, const char* command, const std::exception& e) {
  out.discard_all();
  std::cerr << "crrank " << command << ": " << e.what() << '\n';
  return 1;
}

}  // namespace

int cmd_rank(const RunConfig& config) {
  OutputDir out(config.out_dir);
  try {
    PipelineData data = load_pipeline(config);
    TripartiteGraph graph = build_graph(data.transitions);
    ProfileVectors profiles = build_profiles(graph, data.network, config.lambda);
    WeightMatrices matrices = build_weight_matrices(graph, profiles);

    PropagationConfig prop;
    prop.alpha = config.alpha;
    prop.tol = config.tol;
    prop.max_iter = config.max_iter;
    prop.lambda = config.lambda;
    prop.normalize_per_phase = config.normalize_per_phase;
    ScoreState state = run_crrank(matrices, profiles, prop);

    const auto transition_ids = index_ids(graph.transitions.size());
    const auto path_ids = index_ids(graph.paths.size());

    auto l_initial = rank(profiles.L0, transition_ids);
    auto l_final = rank(state.L, transition_ids);
    auto h_initial = rank(profiles.H0, path_ids);
    auto h_final = rank(state.H, path_ids);
    auto c_initial = rank(profiles.C0, graph.crossroads);
    auto c_final = rank(state.C, graph.crossroads);

    {
      auto f = out.open("transition_scores.csv");
      write_score_csv("transition", make_score_rows(l_initial, l_final), f);
    }
    {
      auto f = out.open("path_scores.csv");
      write_score_csv("path", make_score_rows(h_initial, h_final), f);
    }
    {
      auto f = out.open("crossroad_scores.csv");
      write_score_csv("crossroad", make_score_rows(c_initial, c_final), f);
    }
    {
      auto f = out.open("transition_report.csv");
      write_rank_delta_csv(rank_delta_report(l_initial, l_final), f);
    }
    {
      auto f = out.open("path_report.csv");
      write_rank_delta_csv(rank_delta_report(h_initial, h_final), f);
    }
    {
      auto f = out.open("rejects.csv");
      write_rejects_csv(data.rejects, f);
    }
    if (config.dump_graph) {
      auto f = out.open("graph.json");
      dump_graph_json(graph, profiles, f);
    }

    nlohmann::json manifest;
    manifest["command"] = "rank";
    manifest["config"] = config_json(config);
    manifest["graph"] = {{"transitions", graph.transition_count()},
                         {"paths", graph.path_count()},
                         {"crossroads", graph.crossroad_count()}};
    manifest["propagation"] = {{"iterations", state.iteration},
                               {"last_delta", state.last_delta},
                               {"converged", state.converged(config.tol)}};
    manifest["trips"] = trips_json(data);
    auto f = out.open("manifest.json");
    f << manifest.dump(2) << '\n';
    return 0;
  } catch (const std::exception& e) {
    return fail(out, "rank", e);
  }
}

int cmd_baseline(const RunConfig& config) {
  OutputDir out(config.out_dir);
  try {
    PipelineData data = load_pipeline(config);
    if (data.transitions.empty()) throw Error("empty graph");
    FlowTable flows = crossroad_flow(data.transitions);
    auto ranked = baseline_rank(flows, data.network, config.lambda);

    std::vector<ScoreRow> rows = make_score_rows(ranked, ranked);
    {
      auto f = out.open("baseline_scores.csv");
      write_score_csv("crossroad", rows, f, "baseline");
    }
    {
      auto f = out.open("rejects.csv");
      write_rejects_csv(data.rejects, f);
    }

    nlohmann::json manifest;
    manifest["command"] = "baseline";
    manifest["config"] = config_json(config);
    manifest["crossroads"] = ranked.size();
    manifest["trips"] = trips_json(data);
    auto f = out.open("baseline_manifest.json");
    f << manifest.dump(2) << '\n';
    return 0;
  } catch (const std::exception& e) {
    return fail(out, "baseline", e);
  }
}

int cmd_stats(const RunConfig& config) {
  OutputDir out(config.out_dir);
  try {
    PipelineData data = load_pipeline(config);
    if (data.transitions.empty()) throw Error("no transitions after filtering");
    FlowTable flows = crossroad_flow(data.transitions);

    Histogram visits = visit_rank_histogram(flows);
    Histogram lengths = path_length_histogram(data.transitions);
    {
      auto f = out.open("visit_rank_histogram.csv");
      write_histogram_csv(visits, f);
    }
    {
      auto f = out.open("path_length_histogram.csv");
      write_histogram_csv(lengths, f);
    }

    auto emit_fit = [&](const char* model, const char* name,
                        const Histogram& hist, FitResult (*fit)(const Histogram&)) {
      auto f = out.open(name);
      try {
        write_fit_json(fit(hist), f);
      } catch (const Error& e) {
        std::cerr << "crrank stats: warning: " << model << " fit: " << e.what()
                  << '\n';
        nlohmann::json j;
        j["model"] = model;
        j["error"] = e.what();
        f << j.dump(2) << '\n';
      }
    };
    emit_fit("exponential", "exponential_fit.json", visits, fit_exponential);
    emit_fit("gaussian", "gaussian_fit.json", lengths, fit_gaussian);

    auto f = out.open("rejects.csv");
    write_rejects_csv(data.rejects, f);
    return 0;
  } catch (const std::exception& e) {
    return fail(out, "stats", e);
  }
}

int cmd_synth(const SynthConfig& config) {
  OutputDir out(config.out_dir);
  try {
    RoadNetwork network;
    RegionAssignment regions;
    std::vector<Trip> trips;

    if (config.figure1) {
      Figure1Fixture fixture = figure1_scenario();
      network = std::move(fixture.network);
      regions = std::move(fixture.regions);
      trips = std::move(fixture.trips);
      std::cout << "figure1 fixture: hub crossroad " << fixture.hub_crossroad
                << ", local crossroad " << fixture.local_crossroad << '\n';
    } else {
      auto [net, reg] = make_grid_network(config.grid);
      network = std::move(net);
      regions = std::move(reg);
      DemandSpec demand{config.demand, config.seed};
      for (auto& [trip, od] : generate_trips(network, regions, demand)) {
        trips.push_back(std::move(trip));
      }
    }

    {
      auto f = out.open("network.txt");
      save_network(network, f);
    }
    {
      auto f = out.open("regions.txt");
      save_regions(regions, f);
    }
    {
      auto f = out.open("trips.txt");
      save_trips(trips, f);
    }
    return 0;
  } catch (const std::exception& e) {
    return fail(out, "synth", e);
  }
}

namespace {

std::vector<RankedEntry> read_final_crossroad_ranking(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("no rank output at " + path + "; run `crrank rank` first");
  }
  std::vector<RankedEntry> entries;
  std::string line;
  bool header = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    auto f = split_fields(line);
    if (f.size() < 7) {
      throw Error(path + " line " + std::to_string(lineno) + ": malformed row");
    }
    RankedEntry e;
    e.id = parse_int(f[1], path);
    e.score = parse_double(f[3], path);
    e.rank = static_cast<int>(parse_int(f[5], path));
    entries.push_back(e);
  }
  std::sort(entries.begin(), entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              return a.rank < b.rank;
            });
  return entries;
}

}  // namespace

int cmd_export(const RunConfig& config) {
  OutputDir out(config.out_dir);
  try {
    auto entries =
        read_final_crossroad_ranking(out.path("crossroad_scores.csv"));
    if (config.format == "csv") {
      auto f = out.open("crossroad_ranks.csv");
      write_rank_export_csv(entries, f);
    } else if (config.format == "json") {
      auto f = out.open("crossroad_ranks.json");
      write_rank_export_json(entries, f);
    } else if (config.format == "geojson") {
      if (config.network_path.empty()) {
        throw Error("geojson export needs --network for coordinates");
      }
      RoadNetwork network = load_network_file(config.network_path);
      auto f = out.open("crossroad_ranks.geojson");
      write_rank_export_geojson(entries, network, config.tiers, f);
    } else {
      throw Error("unknown format '" + config.format +
                  "', expected csv, json or geojson");
    }
    return 0;
  } catch (const std::exception& e) {
    return fail(out, "export", e);
  }
}

OdDemand parse_od_demand(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text + ":") {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (parts.size() < 3 || parts.size() > 4) {
    throw Error("--od expects origin:destination:count[:policy], got '" + text +
                "'");
  }
  OdDemand od;
  od.origin = parse_int(parts[0], "--od");
  od.destination = parse_int(parts[1], "--od");
  od.count = parse_int(parts[2], "--od");
  if (parts.size() == 4) {
    if (parts[3] == "shortest") {
      od.policy = RoutePolicy::kShortest;
    } else if (parts[3] == "random") {
      od.policy = RoutePolicy::kRandomShortest;
    } else {
      throw Error("--od policy must be shortest or random, got '" + parts[3] +
                  "'");
    }
  }
  return od;
}

}  // namespace crrank
