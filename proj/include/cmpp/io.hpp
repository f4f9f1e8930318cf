#pragma once

// Text formats: comma lists on the command line, JSON and CSV on output.
// Series coefficients and counts go out as decimal strings; small indices
// (rows, magnitudes, heights) as JSON numbers.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cmpp/bijection.hpp"
#include "cmpp/diagram.hpp"
#include "cmpp/errors.hpp"
#include "cmpp/heights.hpp"
#include "cmpp/qseries.hpp"

namespace cmpp::io {

using json = nlohmann::ordered_json;

inline int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw usage_error("not an integer: '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  for (std::size_t start = 0;;) {
    const std::size_t end = s.find(sep, start);
    out.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

// "0,0,1,0"
inline std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  for (auto item : split(s, ',')) out.push_back(parse_int(item));
  return out;
}

// "3:0,7:1,14:2" as magnitude:absolute_height pairs.
inline std::vector<Part> parse_parts(std::string_view s) {
  std::vector<Part> out;
  for (auto item : split(s, ',')) {
    const auto mh = split(item, ':');
    if (mh.size() != 2) throw usage_error("part must look like magnitude:height, got '" + std::string(item) + "'");
    out.push_back({parse_int(mh[0]), parse_int(mh[1])});
  }
  return out;
}

inline json to_json(const Part& p) { return {{"magnitude", p.magnitude}, {"absolute_height", p.absolute_height}}; }

inline json parts_json(std::span<const Part> parts) {
  json a = json::array();
  for (const Part& p : parts) a.push_back(to_json(p));
  return a;
}

inline json to_json(const CmppPartition& p) {
  return {{"ell", p.config().ell()},
          {"k", std::vector<int>(p.config().k().begin(), p.config().k().end())},
          {"variant", std::string(to_string(p.config().variant()))},
          {"parts", parts_json(p.parts())}};
}

inline std::string decimal(const BigInt& v) { return v.str(); }

inline json to_json(const BivariateSeries& s) {
  json a = json::array();
  for (int j = 0; j <= s.z_truncation(); ++j)
    for (int n = 0; n <= s.q_truncation(); ++n)
      if (s.coefficient(j, n) != 0) a.push_back({{"z", j}, {"q", n}, {"c", decimal(s.coefficient(j, n))}});
  return a;
}

inline json to_json(const CountTable& t) {
  json a = json::array();
  for (int j = 0; j <= t.max_j(); ++j)
    for (int n = 0; n <= t.max_n(); ++n)
      if (t.at(j, n) != 0) a.push_back({{"j", j}, {"n", n}, {"count", std::to_string(t.at(j, n))}});
  return a;
}

inline std::string to_csv(const CountTable& t) {
  std::ostringstream os;
  os << "j,n,count\n";
  for (int j = 0; j <= t.max_j(); ++j)
    for (int n = 0; n <= t.max_n(); ++n)
      if (t.at(j, n) != 0) os << j << ',' << n << ',' << t.at(j, n) << '\n';
  return os.str();
}

inline json to_json(const HeightProfile& p) { return std::vector<int>(p.counts().begin(), p.counts().end()); }

inline json heights_json(const CmppPartition& p, const HeightAssignment& a, const FoldTrace* trace) {
  json rows = json::array();
  for (std::size_t t = 0; t < p.parts().size(); ++t)
    rows.push_back({{"magnitude", p.parts()[t].magnitude},
                    {"absolute_height", p.parts()[t].absolute_height},
                    {"relative_height", a.relative[t]}});
  json out = {{"heights", rows}, {"profile", to_json(height_profile(a, p.config().ell()))}};
  if (trace) {
    json tr = json::array();
    for (const FoldEvent& e : *trace)
      tr.push_back({{"round", e.round},
                    {"part", p.parts()[e.part_index].magnitude},
                    {"virtual_magnitude", e.virtual_magnitude},
                    {"shift", e.shift}});
    out["trace"] = tr;
  }
  return out;
}

inline json to_json(const VectorPartition& v) { return v.components(); }

}  // namespace cmpp::io
