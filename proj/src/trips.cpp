#include "crrank/trips.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "crrank/textio.hpp"

namespace crrank {

Trip readings_to_trip(std::span<const MappedReading> readings,
                      const RoadNetwork& network) {
  if (readings.empty()) throw Error("trip has no readings");
  Trip trip;
  trip.id = readings.front().trip_id;
  trip.first_tm = readings.front().tm;

  std::vector<EdgeId> edges;
  for (const MappedReading& r : readings) {
    if (r.trip_id != trip.id) {
      throw Error("mixed trip ids " + std::to_string(trip.id) + " and " +
                  std::to_string(r.trip_id));
    }
    if (!network.has_segment(r.edge_id)) {
      throw Error("unknown edge " + std::to_string(r.edge_id));
    }
    if (edges.empty() || edges.back() != r.edge_id) edges.push_back(r.edge_id);
  }

  const RoadSegment* prev = &network.segment(edges.front());
  trip.first_edge = prev->id;
  trip.crossroads.push_back(prev->from_node);
  trip.crossroads.push_back(prev->to_node);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const RoadSegment& cur = network.segment(edges[i]);
    if (cur.from_node != prev->to_node) {
      throw Error("discontinuity after edge " + std::to_string(prev->id) +
                  " (" + std::to_string(prev->from_node) + "->" +
                  std::to_string(prev->to_node) + ")");
    }
    trip.crossroads.push_back(cur.to_node);
    prev = &cur;
  }
  trip.last_edge = prev->id;
  return trip;
}

OdPair assign_od(const Trip& trip, const RoadNetwork& network,
                 const RegionAssignment& regions) {
  auto resolve = [&](NodeId endpoint, EdgeId terminal_edge,
                     const char* which) -> RegionId {
    auto it = regions.node_region.find(endpoint);
    if (it != regions.node_region.end()) return it->second;
    const RoadSegment& e = network.segment(terminal_edge);
    if (e.region_right) return *e.region_right;
    throw Error(std::string("unresolvable OD (") + which + " node " +
                std::to_string(endpoint) + " has no region and edge " +
                std::to_string(terminal_edge) + " has no region_right)");
  };
  OdPair od;
  od.origin = resolve(trip.crossroads.front(), trip.first_edge, "origin");
  od.destination = resolve(trip.crossroads.back(), trip.last_edge, "destination");
  return od;
}

std::vector<Transition> group_transitions(
    std::span<const std::pair<Trip, OdPair>> trips, std::int64_t min_trips) {
  if (min_trips < 1) throw Error("min_trips must be >= 1");
  std::map<OdPair, std::map<std::vector<NodeId>, std::int64_t>> buckets;
  for (const auto& [trip, od] : trips) {
    buckets[od][trip.crossroads] += 1;
  }
  std::vector<Transition> out;
  for (const auto& [od, paths] : buckets) {
    Transition t;
    t.origin = od.origin;
    t.destination = od.destination;
    for (const auto& [sequence, count] : paths) {
      t.paths.push_back({sequence, count});
      t.trip_count += count;
    }
    if (t.trip_count >= min_trips) out.push_back(std::move(t));
  }
  return out;
}

namespace {

Trip parse_resolved_trip(const std::vector<std::string>& f,
                         const std::string& where,
                         const RoadNetwork& network) {
  if (f.size() != 5) {
    throw Error(where + ": P record needs trip_id,nodes,first_edge,last_edge");
  }
  Trip trip;
  trip.id = parse_int(f[1], where);
  std::string token;
  for (char c : f[2] + ":") {
    if (c == ':') {
      if (token.empty()) throw Error(where + ": empty node id in sequence");
      trip.crossroads.push_back(parse_int(token, where));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (trip.crossroads.size() < 2) {
    throw Error(where + ": trip needs at least 2 crossroads");
  }
  trip.first_edge = parse_int(f[3], where);
  trip.last_edge = parse_int(f[4], where);

  for (NodeId n : trip.crossroads) {
    if (!network.has_node(n)) throw Error("unknown node " + std::to_string(n));
  }
  for (std::size_t i = 0; i + 1 < trip.crossroads.size(); ++i) {
    if (!network.find_segment(trip.crossroads[i], trip.crossroads[i + 1])) {
      throw Error("no segment joins " + std::to_string(trip.crossroads[i]) +
                  " and " + std::to_string(trip.crossroads[i + 1]));
    }
  }
  const RoadSegment& first = network.segment(trip.first_edge);
  if (first.from_node != trip.crossroads[0] ||
      first.to_node != trip.crossroads[1]) {
    throw Error("first_edge " + std::to_string(trip.first_edge) +
                " does not join the first two crossroads");
  }
  const RoadSegment& last = network.segment(trip.last_edge);
  if (last.from_node != trip.crossroads[trip.crossroads.size() - 2] ||
      last.to_node != trip.crossroads.back()) {
    throw Error("last_edge " + std::to_string(trip.last_edge) +
                " does not join the last two crossroads");
  }
  return trip;
}

}  // namespace

TripLoadResult load_trips(std::istream& in, const RoadNetwork& network) {
  TripLoadResult result;
  // Readings grouped by trip id, in order of first appearance.
  std::vector<TripId> reading_order;
  std::map<TripId, std::vector<MappedReading>> readings;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "trips line " + std::to_string(lineno);
    auto f = split_fields(line);
    if (f[0] == "T") {
      if (f.size() != 4) {
        throw Error(where + ": T record needs trip_id,edge_id,tm");
      }
      MappedReading r;
      r.trip_id = parse_int(f[1], where);
      r.edge_id = parse_int(f[2], where);
      r.tm = parse_int(f[3], where);
      if (!readings.count(r.trip_id)) reading_order.push_back(r.trip_id);
      readings[r.trip_id].push_back(r);
    } else if (f[0] == "P") {
      TripId id = f.size() > 1 ? parse_int(f[1], where) : 0;
      try {
        result.trips.push_back(parse_resolved_trip(f, where, network));
      } catch (const Error& e) {
        result.rejects.push_back({id, e.what()});
      }
    } else {
      throw Error(where + ": expected T or P record, got '" + f[0] + "'");
    }
  }

  for (TripId id : reading_order) {
    auto& group = readings[id];
    std::stable_sort(group.begin(), group.end(),
                     [](const MappedReading& a, const MappedReading& b) {
                       return a.tm < b.tm;
                     });
    try {
      result.trips.push_back(readings_to_trip(group, network));
    } catch (const Error& e) {
      result.rejects.push_back({id, e.what()});
    }
  }
  return result;
}

TripLoadResult load_trips_file(const std::string& path,
                               const RoadNetwork& network) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trips file " + path);
  return load_trips(in, network);
}

void save_trips(std::span<const Trip> trips, std::ostream& out) {
  for (const Trip& t : trips) {
    out << "P," << t.id << ',';
    for (std::size_t i = 0; i < t.crossroads.size(); ++i) {
      if (i > 0) out << ':';
      out << t.crossroads[i];
    }
    out << ',' << t.first_edge << ',' << t.last_edge << '\n';
  }
}

void save_trips_file(std::span<const Trip> trips, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trips file " + path);
  save_trips(trips, out);
}

std::vector<TimeWindow> parse_time_windows(const std::string& text) {
  std::vector<TimeWindow> windows;
  if (text.empty()) return windows;
  auto parse_hhmm = [&](const std::string& s) -> int {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
      throw Error("time window: expected HH:MM, got '" + s + "'");
    }
    int h = static_cast<int>(parse_int(s.substr(0, colon), "time window"));
    int m = static_cast<int>(parse_int(s.substr(colon + 1), "time window"));
    if (h < 0 || h > 23 || m < 0 || m > 59) {
      throw Error("time window: out of range '" + s + "'");
    }
    return h * 3600 + m * 60;
  };
  for (const std::string& part : split_fields(text)) {
    auto dash = part.find('-');
    if (dash == std::string::npos) {
      throw Error("time window: expected HH:MM-HH:MM, got '" + part + "'");
    }
    TimeWindow w;
    w.begin = parse_hhmm(part.substr(0, dash));
    w.end = parse_hhmm(part.substr(dash + 1));
    if (w.end < w.begin) throw Error("time window: end before begin in '" + part + "'");
    windows.push_back(w);
  }
  return windows;
}

std::vector<Trip> filter_by_time_windows(std::vector<Trip> trips,
                                         std::span<const TimeWindow> windows) {
  if (windows.empty()) return trips;
  std::vector<Trip> kept;
  kept.reserve(trips.size());
  for (Trip& t : trips) {
    if (!t.first_tm) {
      kept.push_back(std::move(t));
      continue;
    }
    int tod = static_cast<int>(((*t.first_tm % 86400) + 86400) % 86400);
    for (const TimeWindow& w : windows) {
      if (tod >= w.begin && tod <= w.end) {
        kept.push_back(std::move(t));
        break;
      }
    }
  }
  return kept;
}

void write_rejects_csv(std::span<const RejectRecord> rejects,
                       std::ostream& out) {
  out << "trip_id,reason\n";
  for (const RejectRecord& r : rejects) {
    std::string reason = r.reason;
    bool quote = reason.find_first_of(",\"\n") != std::string::npos;
    if (quote) {
      std::string escaped = "\"";
      for (char c : reason) {
        if (c == '"') escaped += "\"\"";
        else escaped.push_back(c);
      }
      escaped += "\"";
      reason = escaped;
    }
    out << r.trip_id << ',' << reason << '\n';
  }
}

}  // namespace crrank
