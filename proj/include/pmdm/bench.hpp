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

// Synthetic dictionaries and the experiment runner comparing brute force,
// the baseline, and greedy on queries sampled from the dictionary.

#ifndef PMDM_BENCH_HPP_
#define PMDM_BENCH_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmdm/core.hpp"
#include "pmdm/errors.hpp"
#include "pmdm/exact.hpp"
#include "pmdm/heuristic.hpp"

namespace pmdm {

enum class GenMode { kUniform, kClustered };

struct GenConfig {
  std::size_t d = 1000;
  int length = 15;
  int sigma = 26;
  std::uint64_t seed = 1;
  GenMode mode = GenMode::kUniform;
  std::size_t centers = 10;
  double rho = 0.1;  // per-position mutation probability
};

// 'a'..'z' for the first 26 symbols, then code points from U+0100 on.
inline Symbol alphabet_symbol(int i) {
  return i < 26 ? static_cast<Symbol>(U'a' + i) : static_cast<Symbol>(0x100 + i);
}

inline void validate(const GenConfig& cfg) {
  if (cfg.d < 1 || cfg.length < 1 || cfg.sigma < 1) {
    throw ContractError("d, l and sigma must all be at least 1");
  }
  if (cfg.length > kMaxLength) {
    throw CapacityError("string length exceeds the 64-position limit");
  }
  if (cfg.rho < 0 || cfg.rho > 1) throw ContractError("rho outside [0, 1]");
  if (cfg.mode == GenMode::kClustered &&
      (cfg.centers < 1 || cfg.centers > cfg.d)) {
    throw ContractError("centers must lie in [1, d]");
  }
}

// Clustered records copy a uniformly chosen center and redraw each position
// uniformly with probability rho (the redraw may repeat the symbol).
inline Dictionary generate(const GenConfig& cfg) {
  validate(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> symbol(0, cfg.sigma - 1);
  auto random_row = [&] {
    std::u32string s(cfg.length, U'\0');
    for (auto& c : s) c = alphabet_symbol(symbol(rng));
    return s;
  };
  std::vector<FixedString> rows;
  rows.reserve(cfg.d);
  if (cfg.mode == GenMode::kUniform) {
    for (std::size_t i = 0; i < cfg.d; ++i) rows.emplace_back(random_row());
    return Dictionary(rows);
  }
  std::vector<std::u32string> centers;
  for (std::size_t c = 0; c < cfg.centers; ++c) centers.push_back(random_row());
  std::uniform_int_distribution<std::size_t> pick(0, cfg.centers - 1);
  std::bernoulli_distribution mutate(cfg.rho);
  for (std::size_t i = 0; i < cfg.d; ++i) {
    std::u32string s = centers[pick(rng)];
    for (auto& c : s) {
      if (mutate(rng)) c = alphabet_symbol(symbol(rng));
    }
    rows.emplace_back(std::move(s));
  }
  return Dictionary(rows);
}

// ---------------------------------------------------------------------------
// Experiments

enum class AlgorithmKind { kBruteForce, kBaseline, kGreedy };

struct Algorithm {
  AlgorithmKind kind = AlgorithmKind::kGreedy;
  int tau = 3;

  std::string name() const {
    switch (kind) {
      case AlgorithmKind::kBruteForce: return "bf";
      case AlgorithmKind::kBaseline: return "ba";
      case AlgorithmKind::kGreedy: return "gr" + std::to_string(tau);
    }
    return "?";
  }

  // "bf", "ba" or "gr<tau>".
  static Algorithm parse(const std::string& name) {
    if (name == "bf") return {AlgorithmKind::kBruteForce, 0};
    if (name == "ba") return {AlgorithmKind::kBaseline, 0};
    if (name.size() > 2 && name.compare(0, 2, "gr") == 0) {
      std::size_t used = 0;
      int tau = 0;
      try {
        tau = std::stoi(name.substr(2), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == name.size() - 2 && tau >= 1) {
        return {AlgorithmKind::kGreedy, tau};
      }
    }
    throw FormatError("unknown algorithm '" + name + "'");
  }
};

struct ExperimentConfig {
  std::vector<Algorithm> algorithms;
  std::uint64_t z = 1;
  std::size_t queries = 100;
  std::uint64_t seed = 1;
  // Cap on brute-force probes per query; beyond it the query is skipped
  // for brute force.
  std::uint64_t bf_budget = std::uint64_t{1} << 26;
};

struct QueryRecord {
  std::size_t query_id = 0;  // 0-based dictionary index of the query
  std::string algorithm;
  std::optional<int> k;  // empty when skipped
  int iterations = 0;
  double elapsed_us = 0;
};

struct AlgorithmSummary {
  std::string algorithm;
  std::size_t completed = 0;
  std::size_t evaluated = 0;  // queries entering the averages
  double avg_ss = 0;
  std::optional<double> avg_re;  // only when brute force ran
  double mean_us = 0;
};

struct ExperimentReport {
  std::size_t d = 0;
  int length = 0;
  std::uint64_t z = 0;
  std::uint64_t seed = 0;
  std::vector<QueryRecord> records;
  std::vector<AlgorithmSummary> summaries;
};

// Relative error term (k - k*) / k*; an optimum of 0 counts k itself.
inline double relative_error(int k, int k_opt) {
  if (k_opt == 0) return k;
  return static_cast<double>(k - k_opt) / k_opt;
}

// Samples query records uniformly with replacement, runs every algorithm on
// each, and checks every mask by a linear scan. Averages are taken over the
// queries on which brute force completed when it is among the algorithms,
// else over all queries.
inline ExperimentReport run_experiment(const Dictionary& dict,
                                       const ExperimentConfig& cfg) {
  if (cfg.queries < 1) throw ContractError("query count must be at least 1");
  if (cfg.algorithms.empty()) throw ContractError("no algorithms selected");
  if (cfg.z < 1 || cfg.z > dict.size()) {
    throw InfeasibleThreshold("infeasible threshold: z = " +
                              std::to_string(cfg.z) + " exceeds d = " +
                              std::to_string(dict.size()));
  }
  ExperimentReport report{dict.size(), dict.length(), cfg.z, cfg.seed, {}, {}};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick(0, dict.size() - 1);
  const std::size_t m = cfg.algorithms.size();
  int bf_slot = -1;
  for (std::size_t a = 0; a < m; ++a) {
    if (cfg.algorithms[a].kind == AlgorithmKind::kBruteForce) {
      bf_slot = static_cast<int>(a);
    }
  }

  for (std::size_t qi = 0; qi < cfg.queries; ++qi) {
    const std::size_t id = pick(rng);
    const PmdmInstance inst{dict, dict.entry_string(id), cfg.z};
    for (const auto& algo : cfg.algorithms) {
      QueryRecord rec{id, algo.name(), std::nullopt, 0, 0};
      const auto start = std::chrono::steady_clock::now();
      MaskSet mask;
      bool done = true;
      switch (algo.kind) {
        case AlgorithmKind::kBruteForce:
          try {
            mask = bruteforce_pmdm(inst, {cfg.bf_budget});
          } catch (const CapacityError&) {
            done = false;
          }
          break;
        case AlgorithmKind::kBaseline: {
          const auto r = baseline_pmdm(inst);
          mask = r.mask;
          rec.iterations = r.iterations;
          break;
        }
        case AlgorithmKind::kGreedy: {
          GreedyConfig gc;
          gc.tau = algo.tau;
          const auto r = greedy_pmdm(inst, gc);
          mask = r.mask;
          rec.iterations = r.iterations;
          break;
        }
      }
      rec.elapsed_us = std::chrono::duration<double, std::micro>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      if (done) {
        if (count_matches(dict, mask_apply(inst.query, mask)) < cfg.z) {
          throw std::logic_error(algo.name() + " returned an infeasible mask "
                                 "for query " + std::to_string(id));
        }
        rec.k = mask.size();
      }
      report.records.push_back(std::move(rec));
    }
  }

  for (std::size_t a = 0; a < m; ++a) {
    AlgorithmSummary s;
    s.algorithm = cfg.algorithms[a].name();
    double ss = 0, re = 0, us = 0;
    for (std::size_t qi = 0; qi < cfg.queries; ++qi) {
      const auto& rec = report.records[qi * m + a];
      us += rec.elapsed_us;
      if (!rec.k) continue;
      ++s.completed;
      std::optional<int> opt;
      if (bf_slot >= 0) {
        opt = report.records[qi * m + bf_slot].k;
        if (!opt) continue;
      }
      ++s.evaluated;
      ss += *rec.k;
      if (opt) re += relative_error(*rec.k, *opt);
    }
    s.mean_us = us / static_cast<double>(cfg.queries);
    if (s.evaluated > 0) {
      s.avg_ss = ss / static_cast<double>(s.evaluated);
      if (bf_slot >= 0) s.avg_re = re / static_cast<double>(s.evaluated);
    }
    report.summaries.push_back(std::move(s));
  }
  return report;
}

inline const AlgorithmSummary& summary_for(const ExperimentReport& report,
                                           const std::string& algorithm) {
  for (const auto& s : report.summaries) {
    if (s.algorithm == algorithm) return s;
  }
  throw ContractError("no summary for algorithm '" + algorithm + "'");
}

}  // namespace pmdm

#endif  // PMDM_BENCH_HPP_
