// Copyright 2026 The pmdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text and JSON formats: dictionary files, graph files, masks, hypergraph
// dumps, Minimum Union instances and experiment reports. Requires
// nlohmann/json.

#ifndef PMDM_IO_HPP_
#define PMDM_IO_HPP_

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmdm/bench.hpp"
#include "pmdm/core.hpp"
#include "pmdm/errors.hpp"
#include "pmdm/hypergraph.hpp"
#include "pmdm/reductions.hpp"

namespace pmdm {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "pmdm-report/1";

// One string per line; a final empty line is ignored, CR before LF dropped.
inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline std::ifstream open_input(const std::string& path,
                                std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return in;
}

inline std::vector<FixedString> parse_strings(std::istream& in,
                                              char32_t glyph = kDefaultGlyph) {
  std::vector<FixedString> rows;
  std::size_t n = 0;
  for (const auto& line : read_lines(in)) {
    ++n;
    try {
      rows.push_back(FixedString::from_utf8(line, glyph));
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return rows;
}

inline Dictionary read_dictionary(std::istream& in,
                                  char32_t glyph = kDefaultGlyph) {
  return Dictionary(parse_strings(in, glyph));
}

inline Dictionary read_dictionary_file(const std::string& path,
                                       char32_t glyph = kDefaultGlyph) {
  auto in = open_input(path);
  return read_dictionary(in, glyph);
}

inline void write_dictionary_text(std::ostream& out, const Dictionary& dict) {
  for (std::size_t i = 0; i < dict.size(); ++i) {
    out << dict.entry_string(i).to_utf8() << '\n';
  }
}

// First line n, then one "u v" pair per line.
inline Graph read_graph(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw FormatError("graph file is empty");
  int n = 0;
  {
    std::istringstream head(lines[0]);
    if (!(head >> n) || n < 1) throw FormatError("bad node count line");
  }
  Graph g(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream row(lines[i]);
    int u = 0, v = 0;
    std::string rest;
    if (!(row >> u >> v) || (row >> rest)) {
      throw FormatError("graph line " + std::to_string(i + 1) +
                        ": expected 'u v'");
    }
    g.add_edge(u, v);
  }
  return g;
}

// ---------------------------------------------------------------------------
// JSON

inline Json mask_json(const MaskSet& k) { return Json(k.positions()); }

inline MaskSet mask_from_json(const Json& j, int length) {
  if (!j.is_array()) throw FormatError("mask must be a JSON array");
  std::vector<int> pos;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw FormatError("mask entries must be integers");
    pos.push_back(v.get<int>());
  }
  return MaskSet::from_positions(pos, length);
}

// {"k", "positions", "matches", "masked"} for a single query.
inline Json solution_json(const Dictionary& dict, const FixedString& q,
                          const MaskSet& k, char32_t glyph = kDefaultGlyph) {
  const auto masked = mask_apply(q, k);
  Json j;
  j["k"] = k.size();
  j["positions"] = k.positions();
  j["matches"] = count_matches(dict, masked);
  j["masked"] = masked.to_utf8(glyph);
  return j;
}

inline Json hypergraph_json(const WeightedHypergraph& h) {
  Json j;
  j["l"] = h.length();
  j["base"] = h.base();
  Json edges = Json::array();
  const auto keys = h.edge_keys();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    edges.push_back({{"nodes", MaskSet::from_bits(keys[i]).positions()},
                     {"w", h.edge_weight(i)}});
  }
  j["edges"] = std::move(edges);
  return j;
}

inline Json mu_json(const MuInstance& mu) {
  return Json{{"universe", mu.universe}, {"sets", mu.sets}, {"z", mu.z}};
}

inline MuInstance mu_from_json(const Json& j) {
  try {
    MuInstance mu;
    mu.universe = j.at("universe").get<int>();
    mu.sets = j.at("sets").get<std::vector<std::vector<int>>>();
    mu.z = j.at("z").get<std::uint64_t>();
    return mu;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad Minimum Union JSON: ") + e.what());
  }
}

inline Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

inline Json report_json(const ExperimentReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["d"] = r.d;
  j["l"] = r.length;
  j["z"] = r.z;
  j["seed"] = r.seed;
  Json records = Json::array();
  for (const auto& rec : r.records) {
    Json x;
    x["query"] = rec.query_id;
    x["algorithm"] = rec.algorithm;
    x["k"] = rec.k ? Json(*rec.k) : Json(nullptr);
    x["status"] = rec.k ? "ok" : "skipped";
    x["iterations"] = rec.iterations;
    x["elapsed_us"] = rec.elapsed_us;
    records.push_back(std::move(x));
  }
  j["records"] = std::move(records);
  Json summary = Json::array();
  for (const auto& s : r.summaries) {
    Json x;
    x["algorithm"] = s.algorithm;
    x["completed"] = s.completed;
    x["evaluated"] = s.evaluated;
    x["avg_ss"] = s.avg_ss;
    x["avg_re"] = s.avg_re ? Json(*s.avg_re) : Json(nullptr);
    x["mean_us"] = s.mean_us;
    summary.push_back(std::move(x));
  }
  j["summary"] = std::move(summary);
  return j;
}

// One row per record.
inline void write_report_csv(std::ostream& out, const ExperimentReport& r) {
  out << "query,algorithm,k,status,iterations,elapsed_us\n";
  for (const auto& rec : r.records) {
    out << rec.query_id << ',' << rec.algorithm << ','
        << (rec.k ? std::to_string(*rec.k) : std::string()) << ','
        << (rec.k ? "ok" : "skipped") << ',' << rec.iterations << ','
        << rec.elapsed_us << '\n';
  }
}

}  // namespace pmdm

#endif  // PMDM_IO_HPP_
