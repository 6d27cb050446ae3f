#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "crrank/network.hpp"
#include "crrank/propagation.hpp"

namespace crrank {

/// One row of the score dump: an entity with its seed and converged scores
/// and ranks.
struct ScoreRow {
  std::int64_t entity_id = 0;
  double initial_score = 0.0;
  double final_score = 0.0;
  int initial_rank = 0;
  int final_rank = 0;
  int rank_delta = 0;  // initial - final
};

/// Joins an initial and a final ranking over the same ids into score rows,
/// ordered by final rank.
std::vector<ScoreRow> make_score_rows(std::span<const RankedEntry> initial,
                                      std::span<const RankedEntry> final_);

/// entity_kind,entity_id,initial_score,final_score,initial_rank,final_rank,
/// rank_delta[,method]
void write_score_csv(const std::string& entity_kind,
                     std::span<const ScoreRow> rows, std::ostream& out,
                     const std::string& method = "");

/// Rank-tier thresholds for exports; ranks at or below each bound map to
/// "top5" / "top25" / "top100", the remainder to "rest".
struct TierSpec {
  int top {5};
  int mid {25};
  int wide {100};
};

std::string tier_name(int rank, const TierSpec& tiers);

/// Plain (id, score, rank) exports of a converged crossroad ranking.
void write_rank_export_csv(std::span<const RankedEntry> entries,
                           std::ostream& out);
void write_rank_export_json(std::span<const RankedEntry> entries,
                            std::ostream& out);

/// GeoJSON FeatureCollection of crossroad points with score, rank and tier
/// properties. Every ranked crossroad must carry coordinates.
void write_rank_export_geojson(std::span<const RankedEntry> entries,
                               const RoadNetwork& network,
                               const TierSpec& tiers, std::ostream& out);

}  // namespace crrank
