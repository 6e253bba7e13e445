#pragma once

// Text and JSON exports for point sets and greedy trajectories.

#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "satset/errors.hpp"
#include "satset/geometry.hpp"
#include "satset/saturate.hpp"

namespace satset {

/// One point per line: `index : c0 c1 c2` (just `index` without coordinates).
inline void write_set(const PlaneModel& plane, std::span<const PointId> set, std::ostream& os) {
  for (PointId p : set) {
    os << p;
    if (auto c = plane.coords(p)) os << " : " << (*c)[0] << ' ' << (*c)[1] << ' ' << (*c)[2];
    os << '\n';
  }
}

inline std::vector<PointId> read_set(std::istream& is) {
  std::vector<PointId> out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (auto colon = raw.find(':'); colon != std::string::npos) raw.erase(colon);
    std::istringstream ss(raw);
    long long index = 0;
    if (!(ss >> index)) {
      std::string rest;
      if (std::istringstream(raw) >> rest) throw ParseError("line " + std::to_string(lineno) + ": expected a point index");
      continue;
    }
    std::string extra;
    if (index < 0 || (ss >> extra)) throw ParseError("line " + std::to_string(lineno) + ": malformed point entry");
    out.push_back(static_cast<PointId>(index));
  }
  if (out.empty()) throw ParseError("set file contains no points");
  return out;
}

inline nlohmann::json step_to_json(const StepLog& s) {
  nlohmann::json j;
  j["i"] = s.i;
  j["line"] = s.line ? nlohmann::json(*s.line) : nlohmann::json(nullptr);
  j["point"] = s.point;
  j["r_before"] = s.r_before;
  j["r_after"] = s.r_after;
  j["bound_num"] = s.bound_num;
  j["bound_den"] = s.bound_den;
  j["skew"] = s.skew_available;
  return j;
}

inline nlohmann::json trajectory_to_json(std::span<const StepLog> steps) {
  auto arr = nlohmann::json::array();
  for (const auto& s : steps) arr.push_back(step_to_json(s));
  return arr;
}

inline std::vector<StepLog> trajectory_from_json(const nlohmann::json& arr) {
  std::vector<StepLog> out;
  for (const auto& j : arr) {
    StepLog s;
    s.i = j.at("i").get<std::uint64_t>();
    if (!j.at("line").is_null()) s.line = j.at("line").get<LineId>();
    s.point = j.at("point").get<PointId>();
    s.r_before = j.at("r_before").get<std::uint64_t>();
    s.r_after = j.at("r_after").get<std::uint64_t>();
    s.bound_num = j.at("bound_num").get<std::int64_t>();
    s.bound_den = j.at("bound_den").get<std::int64_t>();
    s.skew_available = j.at("skew").get<bool>();
    out.push_back(s);
  }
  return out;
}

}  // namespace satset
