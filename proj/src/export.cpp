#include "crrank/export.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

#include "crrank/textio.hpp"

namespace crrank {

std::vector<ScoreRow> make_score_rows(std::span<const RankedEntry> initial,
                                      std::span<const RankedEntry> final_) {
  if (initial.size() != final_.size()) {
    throw Error("initial and final rankings differ in size");
  }
  std::map<std::int64_t, const RankedEntry*> seed;
  for (const RankedEntry& e : initial) seed[e.id] = &e;

  std::vector<ScoreRow> rows;
  rows.reserve(final_.size());
  for (const RankedEntry& e : final_) {
    auto it = seed.find(e.id);
    if (it == seed.end()) {
      throw Error("id " + std::to_string(e.id) + " missing from initial ranking");
    }
    rows.push_back({e.id, it->second->score, e.score, it->second->rank, e.rank,
                    it->second->rank - e.rank});
  }
  std::sort(rows.begin(), rows.end(),
            [](const ScoreRow& a, const ScoreRow& b) {
              return a.final_rank < b.final_rank;
            });
  return rows;
}

void write_score_csv(const std::string& entity_kind,
                     std::span<const ScoreRow> rows, std::ostream& out,
                     const std::string& method) {
  out << "entity_kind,entity_id,initial_score,final_score,initial_rank,"
         "final_rank,rank_delta";
  if (!method.empty()) out << ",method";
  out << '\n';
  for (const ScoreRow& r : rows) {
    out << entity_kind << ',' << r.entity_id << ','
        << format_double(r.initial_score) << ',' << format_double(r.final_score)
        << ',' << r.initial_rank << ',' << r.final_rank << ',' << r.rank_delta;
    if (!method.empty()) out << ',' << method;
    out << '\n';
  }
}

std::string tier_name(int rank, const TierSpec& tiers) {
  if (rank <= tiers.top) return "top5";
  if (rank <= tiers.mid) return "top25";
  if (rank <= tiers.wide) return "top100";
  return "rest";
}

void write_rank_export_csv(std::span<const RankedEntry> entries,
                           std::ostream& out) {
  out << "id,score,rank\n";
  for (const RankedEntry& e : entries) {
    out << e.id << ',' << format_double(e.score) << ',' << e.rank << '\n';
  }
}

void write_rank_export_json(std::span<const RankedEntry> entries,
                            std::ostream& out) {
  nlohmann::json list = nlohmann::json::array();
  for (const RankedEntry& e : entries) {
    nlohmann::json item;
    item["id"] = e.id;
    item["score"] = e.score;
    item["rank"] = e.rank;
    list.push_back(std::move(item));
  }
  out << list.dump(2) << '\n';
}

void write_rank_export_geojson(std::span<const RankedEntry> entries,
                               const RoadNetwork& network,
                               const TierSpec& tiers, std::ostream& out) {
  nlohmann::json features = nlohmann::json::array();
  for (const RankedEntry& e : entries) {
    const Crossroad& node = network.node(e.id);
    if (!node.coords) {
      throw Error("crossroad " + std::to_string(e.id) +
                  " has no coordinates; geojson export needs them");
    }
    nlohmann::json feature;
    feature["type"] = "Feature";
    feature["geometry"]["type"] = "Point";
    feature["geometry"]["coordinates"] = {(*node.coords)[0], (*node.coords)[1]};
    feature["properties"]["id"] = e.id;
    feature["properties"]["score"] = e.score;
    feature["properties"]["rank"] = e.rank;
    feature["properties"]["tier"] = tier_name(e.rank, tiers);
    features.push_back(std::move(feature));
  }
  nlohmann::json collection;
  collection["type"] = "FeatureCollection";
  collection["features"] = std::move(features);
  out << collection.dump(2) << '\n';
}

}  // namespace crrank
