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

// Command-line front end. Results go to stdout (JSON unless --format says
// otherwise), diagnostics to stderr. Exit codes: 0 success, 1 infeasible
// threshold, 2 bad input or I/O failure, 3 capacity guard.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmdm/io.hpp"
#include "pmdm/pmdm.hpp"

namespace {

using pmdm::Json;

enum ExitCode { kOk = 0, kInfeasible = 1, kBadInput = 2, kCapacity = 3 };

struct Common {
  std::string glyph = "?";
  std::string format = "json";
  bool verbose = false;

  char32_t wildcard() const {
    const auto cps = pmdm::decode_utf8(glyph);
    if (cps.size() != 1) {
      throw pmdm::FormatError("--wildcard must be a single character");
    }
    return cps[0];
  }

  void log(const std::string& msg) const {
    if (verbose) std::cerr << "pmdm: " << msg << '\n';
  }
};

int table_limit() {
  if (const char* env = std::getenv("PMDM_TABLE_LIMIT")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1 && v <= pmdm::kMaxLength) return v;
    } catch (const std::exception&) {
    }
    throw pmdm::FormatError("PMDM_TABLE_LIMIT must be an integer in [1, 64]");
  }
  return pmdm::kDefaultTableLimit;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) {
      if (!out.empty()) out += ';';
      out += scalar_text(x);
    }
    return out;
  }
  return v.dump();
}

// Flat objects only: CSV gets a header row and one value row, plain gets
// "key: value" lines.
void emit(const Common& c, const Json& j) {
  if (c.format == "json") {
    std::cout << j.dump() << '\n';
  } else if (c.format == "csv") {
    std::string head, row;
    for (const auto& [k, v] : j.items()) {
      head += (head.empty() ? "" : ",") + k;
      row += (row.empty() ? "" : ",") + scalar_text(v);
    }
    std::cout << head << '\n' << row << '\n';
  } else {
    for (const auto& [k, v] : j.items()) {
      std::cout << k << ": " << scalar_text(v) << '\n';
    }
  }
}

void write_text_file(const std::string& path,
                     const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pmdm::FormatError("cannot write '" + path + "'");
  body(out);
  if (!out) throw pmdm::FormatError("failed writing '" + path + "'");
}

std::vector<pmdm::FixedString> read_queries(const std::string& path,
                                            char32_t glyph) {
  auto in = pmdm::open_input(path);
  auto qs = pmdm::parse_strings(in, glyph);
  if (qs.empty()) throw pmdm::FormatError("query file '" + path + "' is empty");
  return qs;
}

pmdm::NodeScore parse_score(const std::string& s) {
  return s == "weight-per-size" ? pmdm::NodeScore::kWeightPerSize
                                : pmdm::NodeScore::kDefault;
}

// Parsed flag values; one instance shared by all subcommands.
struct Args {
  std::string dict, query, query_file, multi, dump, score = "default";
  std::uint64_t z = 1;
  int tau = 3;
  std::string positions, pattern;
  std::string kind = "small", out, index_file, key_mode = "exact";
  int k = 1;
  std::uint64_t z0 = 1;
  std::string graph, out_dict, mu_file;
  // bench
  std::size_t gen_d = 1000, queries = 100;
  int gen_l = 15, sigma = 26;
  std::uint64_t seed = 1, bf_budget = std::uint64_t{1} << 26;
  std::string mode = "uniform", algos = "bf,ba,gr3", csv;
  std::size_t centers = 10;
  double rho = 0.1;
};

pmdm::FixedString the_query(const Args& a, char32_t glyph) {
  if (a.query.empty()) throw pmdm::FormatError("--query is required");
  return pmdm::FixedString::from_utf8(a.query, glyph);
}

Json multi_json(const pmdm::Dictionary& d,
                const std::vector<pmdm::FixedString>& qs, const pmdm::MaskSet& k,
                char32_t glyph) {
  Json j;
  j["k"] = k.size();
  j["positions"] = k.positions();
  Json matches = Json::array(), masked = Json::array();
  for (const auto& q : qs) {
    const auto m = pmdm::mask_apply(q, k);
    matches.push_back(pmdm::count_matches(d, m));
    masked.push_back(m.to_utf8(glyph));
  }
  j["matches"] = std::move(matches);
  j["masked"] = std::move(masked);
  return j;
}

void run_solve(const Common& c, const Args& a) {
  const char32_t g = c.wildcard();
  const auto dict = pmdm::read_dictionary_file(a.dict, g);
  std::vector<pmdm::FixedString> qs;
  if (!a.query.empty()) qs.push_back(the_query(a, g));
  for (const auto* file : {&a.query_file, &a.multi}) {
    if (file->empty()) continue;
    for (auto& q : read_queries(*file, g)) qs.push_back(std::move(q));
  }
  if (qs.empty()) throw pmdm::FormatError("give --query, --query-file or --multi");
  c.log("d = " + std::to_string(dict.size()) + ", l = " +
        std::to_string(dict.length()) + ", queries = " +
        std::to_string(qs.size()));
  if (qs.size() == 1) {
    const pmdm::PmdmInstance inst{dict, qs[0], a.z};
    if (!a.dump.empty()) {
      pmdm::require_same_length(qs[0].length(), dict.length());
      const auto dump = pmdm::hypergraph_json(pmdm::build_hypergraph(dict, qs[0]));
      write_text_file(a.dump, [&](std::ostream& o) { o << dump.dump(2) << '\n'; });
    }
    emit(c, pmdm::solution_json(dict, qs[0], pmdm::solve_pmdm(inst), g));
  } else {
    const pmdm::MpmdmInstance inst{dict, qs, a.z};
    emit(c, multi_json(dict, qs, pmdm::solve_mpmdm(inst), g));
  }
}

void run_heuristic(const Common& c, const Args& a, bool greedy) {
  const char32_t g = c.wildcard();
  const auto dict = pmdm::read_dictionary_file(a.dict, g);
  const pmdm::PmdmInstance inst{dict, the_query(a, g), a.z};
  pmdm::HeuristicResult r;
  if (greedy) {
    pmdm::GreedyConfig cfg;
    cfg.tau = a.tau;
    cfg.score = parse_score(a.score);
    r = pmdm::greedy_pmdm(inst, cfg);
  } else {
    r = pmdm::baseline_pmdm(inst, parse_score(a.score));
  }
  auto j = pmdm::solution_json(dict, inst.query, r.mask, g);
  j["iterations"] = r.iterations;
  emit(c, j);
}

pmdm::MaskSet parse_positions(const std::string& text, int length) {
  std::string s = text;
  if (s.find('[') == std::string::npos) s = "[" + s + "]";
  Json j;
  try {
    j = Json::parse(s);
  } catch (const nlohmann::json::exception&) {
    throw pmdm::FormatError("--positions must look like [1,2,4] or 1,2,4");
  }
  return pmdm::mask_from_json(j, length);
}

void run_mask(const Common& c, const Args& a) {
  const char32_t g = c.wildcard();
  const auto q = the_query(a, g);
  const auto k = parse_positions(a.positions, q.length());
  emit(c, Json{{"masked", pmdm::mask_apply(q, k).to_utf8(g)}});
}

void run_count(const Common& c, const Args& a) {
  const char32_t g = c.wildcard();
  const auto dict = pmdm::read_dictionary_file(a.dict, g);
  const auto x = pmdm::MaskedString::from_utf8(a.pattern, g);
  emit(c, Json{{"matches", pmdm::count_matches(dict, x)}});
}

void run_index_build(const Common& c, const Args& a) {
  const char32_t g = c.wildcard();
  const auto dict = pmdm::read_dictionary_file(a.dict, g);
  Json info{{"kind", a.kind}, {"l", dict.length()}, {"d", dict.size()}};
  pmdm::AnyIndex idx;
  if (a.kind == "small") {
    const int limit = table_limit();
    if (dict.length() > limit) {
      throw pmdm::CapacityError("string length exceeds the 2^l table limit");
    }
    idx = pmdm::SmallEllIndex{dict};
  } else if (a.kind == "simple") {
    const auto mode = a.key_mode == "fingerprint" ? pmdm::KeyMode::kFingerprint
                                                  : pmdm::KeyMode::kExact;
    auto s = pmdm::simple_build(dict, a.k, a.z0, mode);
    info["k"] = a.k;
    info["z0"] = a.z0;
    std::size_t entries = 0;
    for (std::size_t i = 0; i < s.masks().size(); ++i) entries += s.table(i).size();
    info["entries"] = entries;
    idx = std::move(s);
  } else {
    auto s = pmdm::split_build(dict, static_cast<std::uint64_t>(a.tau), a.z0,
                               table_limit());
    info["tau"] = a.tau;
    info["z0"] = a.z0;
    info["pairs"] = s.pair_count();
    idx = std::move(s);
  }
  write_text_file(a.out, [&](std::ostream& o) { pmdm::write_index(o, idx); });
  info["out"] = a.out;
  emit(c, info);
}

void run_index_query(const Common& c, const Args& a) {
  const char32_t g = c.wildcard();
  auto in = pmdm::open_input(a.index_file, std::ios::in | std::ios::binary);
  const auto idx = pmdm::read_index(in);
  const auto q = the_query(a, g);
  Json j;
  if (const auto* s = std::get_if<pmdm::SmallEllIndex>(&idx)) {
    const auto table = pmdm::small_ell_build(s->dictionary, q, table_limit());
    j = pmdm::solution_json(s->dictionary, q, pmdm::small_ell_query(table, a.z), g);
  } else if (const auto* s = std::get_if<pmdm::SplitIndex>(&idx)) {
    j = pmdm::solution_json(s->dictionary(), q, pmdm::split_query(*s, q, a.z), g);
  } else {
    const auto& simple = std::get<pmdm::SimpleIndex>(idx);
    const auto r = pmdm::simple_query(simple, q, a.z);
    if (!r) {
      emit(c, Json{{"found", false}});
      return;
    }
    const auto masked = pmdm::mask_apply(q, r->first);
    j["k"] = r->first.size();
    j["positions"] = r->first.positions();
    j["matches"] = r->second;
    j["masked"] = masked.to_utf8(g);
  }
  j["found"] = true;
  emit(c, j);
}

void run_reduce_clique(const Common& c, const Args& a) {
  auto in = pmdm::open_input(a.graph);
  const auto graph = pmdm::read_graph(in);
  const auto inst = pmdm::clique_to_pmdm(graph, a.k);
  write_text_file(a.out_dict, [&](std::ostream& o) {
    pmdm::write_dictionary_text(o, inst.dictionary);
  });
  emit(c, Json{{"query", inst.query.to_utf8()},
               {"z", inst.z},
               {"k", a.k},
               {"d", inst.dictionary.size()},
               {"out_dict", a.out_dict}});
}

void run_reduce_to_mu(const Common& c, const Args& a) {
  const char32_t g = c.wildcard();
  const auto dict = pmdm::read_dictionary_file(a.dict, g);
  const auto mu = pmdm::pmdm_to_mu({dict, the_query(a, g), a.z});
  const auto j = pmdm::mu_json(mu);
  if (!a.out.empty()) {
    write_text_file(a.out, [&](std::ostream& o) { o << j.dump() << '\n'; });
  }
  std::cout << j.dump() << '\n';
  (void)c;
}

void run_reduce_from_mu(const Common& c, const Args& a) {
  auto in = pmdm::open_input(a.mu_file);
  const auto mu = pmdm::mu_from_json(pmdm::parse_json(in));
  const auto r = pmdm::mu_to_pmdm(mu);
  write_text_file(a.out_dict, [&](std::ostream& o) {
    pmdm::write_dictionary_text(o, r.instance.dictionary);
  });
  emit(c, Json{{"query", r.instance.query.to_utf8()},
               {"z", r.instance.z},
               {"ranks", r.rank_to_element},
               {"out_dict", a.out_dict}});
}

void run_bench_gen(const Common& c, const Args& a) {
  pmdm::GenConfig cfg;
  cfg.d = a.gen_d;
  cfg.length = a.gen_l;
  cfg.sigma = a.sigma;
  cfg.seed = a.seed;
  cfg.mode = a.mode == "clustered" ? pmdm::GenMode::kClustered
                                   : pmdm::GenMode::kUniform;
  cfg.centers = a.centers;
  cfg.rho = a.rho;
  const auto dict = pmdm::generate(cfg);
  write_text_file(a.out, [&](std::ostream& o) {
    pmdm::write_dictionary_text(o, dict);
  });
  emit(c, Json{{"d", dict.size()}, {"l", dict.length()}, {"out", a.out}});
}

void run_bench_run(const Common& c, const Args& a) {
  const char32_t g = c.wildcard();
  const auto dict = pmdm::read_dictionary_file(a.dict, g);
  pmdm::ExperimentConfig cfg;
  std::stringstream names(a.algos);
  for (std::string name; std::getline(names, name, ',');) {
    if (!name.empty()) cfg.algorithms.push_back(pmdm::Algorithm::parse(name));
  }
  cfg.z = a.z;
  cfg.queries = a.queries;
  cfg.seed = a.seed;
  cfg.bf_budget = a.bf_budget;
  const auto report = pmdm::run_experiment(dict, cfg);
  const auto j = pmdm::report_json(report);
  if (!a.out.empty()) {
    write_text_file(a.out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  }
  if (!a.csv.empty()) {
    write_text_file(a.csv, [&](std::ostream& o) { pmdm::write_report_csv(o, report); });
  }
  if (c.format == "csv") {
    pmdm::write_report_csv(std::cout, report);
  } else {
    std::cout << j.dump() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern masking for dictionary matching: find the fewest query "
               "positions to turn into wildcards so that at least z dictionary "
               "strings match."};
  app.require_subcommand(1);
  Common common;
  Args a;
  app.add_option("--wildcard", common.glyph,
                 "Character that renders the wildcard (must not occur in "
                 "dictionary strings)")
      ->capture_default_str();
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();
  app.add_flag("-v,--verbose", common.verbose, "Diagnostics on stderr");

  std::function<void()> action;
  auto dict_opt = [&](CLI::App* s) {
    return s->add_option("--dict", a.dict, "Dictionary file: one string per line")
        ->required();
  };
  auto query_opt = [&](CLI::App* s) {
    return s->add_option("--query", a.query, "Query string");
  };
  auto z_opt = [&](CLI::App* s) {
    return s->add_option("--z", a.z, "Minimum number of matching strings")
        ->required();
  };
  auto score_opt = [&](CLI::App* s) {
    s->add_option("--score", a.score,
                  "Node score: default (|E_u| * sum w / sum |e|) or "
                  "weight-per-size (sum w / |e|)")
        ->check(CLI::IsMember({"default", "weight-per-size"}))
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Exact minimum mask");
  dict_opt(solve);
  query_opt(solve);
  solve->add_option("--query-file", a.query_file,
                    "Queries, one per line; several lines solve them jointly");
  solve->add_option("--multi", a.multi,
                    "Additional queries (one per line) that must all reach z "
                    "with the same mask");
  z_opt(solve);
  solve->add_option("--dump-hypergraph", a.dump,
                    "Write the mismatch hypergraph as JSON to this file");
  solve->callback([&] { action = [&] { run_solve(common, a); }; });

  auto* greedy = app.add_subcommand("greedy", "Greedy heuristic");
  dict_opt(greedy);
  query_opt(greedy)->required();
  z_opt(greedy);
  greedy->add_option("--tau", a.tau, "Largest section size solved exactly per round")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  score_opt(greedy);
  greedy->callback([&] { action = [&] { run_heuristic(common, a, true); }; });

  auto* baseline = app.add_subcommand("baseline", "One-node-at-a-time baseline");
  dict_opt(baseline);
  query_opt(baseline)->required();
  z_opt(baseline);
  score_opt(baseline);
  baseline->callback([&] { action = [&] { run_heuristic(common, a, false); }; });

  auto* mask = app.add_subcommand("mask", "Apply a mask to a query");
  query_opt(mask)->required();
  mask->add_option("--positions", a.positions, "1-based positions, e.g. [1,2,4]")
      ->required();
  mask->callback([&] { action = [&] { run_mask(common, a); }; });

  auto* count = app.add_subcommand("count", "Count dictionary strings matching a pattern");
  dict_opt(count);
  count->add_option("--pattern", a.pattern, "Pattern with wildcards, e.g. a?a?")
      ->required();
  count->callback([&] { action = [&] { run_count(common, a); }; });

  auto* index = app.add_subcommand("index", "Build or query a stored index");
  index->require_subcommand(1);
  auto* ibuild = index->add_subcommand("build", "Build an index file");
  dict_opt(ibuild);
  ibuild->add_option("--kind", a.kind, "small, simple or split")
      ->check(CLI::IsMember({"small", "simple", "split"}))
      ->capture_default_str();
  ibuild->add_option("--k", a.k, "Mask size for simple")->capture_default_str();
  ibuild->add_option("--tau", a.tau, "Frequency threshold for split")
      ->capture_default_str();
  ibuild->add_option("--z0", a.z0, "Smallest threshold the index must answer")
      ->capture_default_str();
  ibuild->add_option("--key-mode", a.key_mode,
                     "exact keys or fingerprint (hashed, verified on lookup)")
      ->check(CLI::IsMember({"exact", "fingerprint"}))
      ->capture_default_str();
  ibuild->add_option("--out", a.out, "Index file to write")->required();
  ibuild->callback([&] { action = [&] { run_index_build(common, a); }; });
  auto* iquery = index->add_subcommand("query", "Answer a query from an index file");
  iquery->add_option("--index", a.index_file, "Index file")->required();
  query_opt(iquery)->required();
  z_opt(iquery);
  iquery->callback([&] { action = [&] { run_index_query(common, a); }; });

  auto* reduce = app.add_subcommand("reduce", "Instance translations");
  reduce->require_subcommand(1);
  auto* rclique = reduce->add_subcommand("clique", "k-Clique to k-PMDM");
  rclique->add_option("--graph", a.graph, "Graph file: n, then 'u v' lines")->required();
  rclique->add_option("--k", a.k, "Clique size")->required();
  rclique->add_option("--out-dict", a.out_dict, "Dictionary file to write")->required();
  rclique->callback([&] { action = [&] { run_reduce_clique(common, a); }; });
  auto* rto = reduce->add_subcommand("to-mu", "PMDM to Minimum Union JSON");
  dict_opt(rto);
  query_opt(rto)->required();
  z_opt(rto);
  rto->add_option("--out", a.out, "Also write the JSON to this file");
  rto->callback([&] { action = [&] { run_reduce_to_mu(common, a); }; });
  auto* rfrom = reduce->add_subcommand("from-mu", "Minimum Union JSON to PMDM");
  rfrom->add_option("--mu", a.mu_file, "Minimum Union JSON file")->required();
  rfrom->add_option("--out-dict", a.out_dict, "Dictionary file to write")->required();
  rfrom->callback([&] { action = [&] { run_reduce_from_mu(common, a); }; });

  auto* bench = app.add_subcommand("bench", "Synthetic data and experiments");
  bench->require_subcommand(1);
  auto* bgen = bench->add_subcommand("gen", "Generate a dictionary file");
  bgen->add_option("--d", a.gen_d, "Number of strings")->capture_default_str();
  bgen->add_option("--l", a.gen_l, "String length")->capture_default_str();
  bgen->add_option("--sigma", a.sigma, "Alphabet size")->capture_default_str();
  bgen->add_option("--seed", a.seed, "Random seed")->capture_default_str();
  bgen->add_option("--mode", a.mode, "uniform or clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}))
      ->capture_default_str();
  bgen->add_option("--centers", a.centers, "Cluster count")->capture_default_str();
  bgen->add_option("--rho", a.rho, "Per-position mutation probability")
      ->capture_default_str();
  bgen->add_option("--out", a.out, "Dictionary file to write")->required();
  bgen->callback([&] { action = [&] { run_bench_gen(common, a); }; });
  auto* brun = bench->add_subcommand("run", "Compare algorithms on sampled queries");
  dict_opt(brun);
  z_opt(brun);
  brun->add_option("--algos", a.algos, "Comma list of bf, ba, gr<tau>")
      ->capture_default_str();
  brun->add_option("--queries", a.queries, "Number of sampled queries")
      ->capture_default_str();
  brun->add_option("--seed", a.seed, "Sampling seed")->capture_default_str();
  brun->add_option("--bf-budget", a.bf_budget,
                   "Brute-force probe cap per query; above it bf is skipped")
      ->capture_default_str();
  brun->add_option("--out", a.out, "Write the JSON report here");
  brun->add_option("--csv", a.csv, "Write per-query rows as CSV here");
  brun->callback([&] { action = [&] { run_bench_run(common, a); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    action();
    return kOk;
  } catch (const pmdm::InfeasibleThreshold& e) {
    std::cerr << "pmdm: " << e.what() << '\n';
    return kInfeasible;
  } catch (const pmdm::CapacityError& e) {
    std::cerr << "pmdm: capacity guard: " << e.what() << '\n';
    return kCapacity;
  } catch (const std::exception& e) {
    std::cerr << "pmdm: " << e.what() << '\n';
    return kBadInput;
  }
}
