#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crrank/network.hpp"

namespace crrank {

/// One map-matched GPS reading: trip id, the road segment the reading was
/// matched to, and the sampling timestamp in seconds since epoch.
struct MappedReading {
  TripId trip_id = 0;
  EdgeId edge_id = 0;
  std::int64_t tm = 0;
};

/// An effective trip reduced to its crossroad sequence. first_edge and
/// last_edge keep the directed terminal segments for OD resolution on
/// region boundaries. first_tm is present only for trips built from
/// timestamped readings.
struct Trip {
  TripId id = 0;
  std::vector<NodeId> crossroads;
  EdgeId first_edge = 0;
  EdgeId last_edge = 0;
  std::optional<std::int64_t> first_tm;
};

/// An ordered origin/destination region pair.
struct OdPair {
  RegionId origin = 0;
  RegionId destination = 0;
  auto operator<=>(const OdPair&) const = default;
};

/// A distinct route of one transition and the number of trips that chose it.
struct PathRecord {
  std::vector<NodeId> sequence;
  std::int64_t trip_count = 0;
};

/// All trips between one ordered region pair, grouped into distinct paths.
/// trip_count is the sum of the path counts.
struct Transition {
  RegionId origin = 0;
  RegionId destination = 0;
  std::vector<PathRecord> paths;
  std::int64_t trip_count = 0;
};

struct RejectRecord {
  TripId trip_id = 0;
  std::string reason;
};

/// Converts one trip's time-ordered readings into a crossroad sequence.
/// Consecutive repeats of the same edge collapse; a discontinuity between
/// consecutive edges throws an Error describing the break.
Trip readings_to_trip(std::span<const MappedReading> readings,
                      const RoadNetwork& network);

/// Resolves a trip's origin and destination regions: an endpoint uses its
/// node_region when assigned, otherwise the region on the right-hand side of
/// the terminal segment. Throws "unresolvable OD" when neither exists.
OdPair assign_od(const Trip& trip, const RoadNetwork& network,
                 const RegionAssignment& regions);

/// Buckets trips by ordered OD pair, merges identical crossroad sequences
/// into paths, and drops transitions with fewer than min_trips trips.
/// Output is sorted by (origin, destination); paths within a transition are
/// sorted by sequence, so the result is independent of input order.
std::vector<Transition> group_transitions(
    std::span<const std::pair<Trip, OdPair>> trips, std::int64_t min_trips);

struct TripLoadResult {
  std::vector<Trip> trips;
  std::vector<RejectRecord> rejects;
};

// Trips file, two record forms (both accepted, per line):
//   T,<trip_id>,<edge_id>,<tm>                        readings
//   P,<trip_id>,<n1>:<n2>:...,<first_edge>,<last_edge> pre-resolved
// Malformed or discontinuous trips become RejectRecords, not errors.
TripLoadResult load_trips(std::istream& in, const RoadNetwork& network);
TripLoadResult load_trips_file(const std::string& path,
                               const RoadNetwork& network);
void save_trips(std::span<const Trip> trips, std::ostream& out);
void save_trips_file(std::span<const Trip> trips, const std::string& path);

/// An inclusive time-of-day window, both bounds in seconds from midnight.
struct TimeWindow {
  int begin = 0;
  int end = 0;
};

/// Parses "HH:MM-HH:MM[,HH:MM-HH:MM...]".
std::vector<TimeWindow> parse_time_windows(const std::string& text);

/// Keeps trips whose first reading's time of day falls inside any window.
/// Trips without a timestamp pass unchanged; no windows means no filter.
std::vector<Trip> filter_by_time_windows(std::vector<Trip> trips,
                                         std::span<const TimeWindow> windows);

/// rejects.csv sidecar: header "trip_id,reason" plus one row per reject.
void write_rejects_csv(std::span<const RejectRecord> rejects,
                       std::ostream& out);

}  // namespace crrank
