// Copyright 2026 The dkcsp Authors
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

#ifndef DKCSP_BENCH_HPP
#define DKCSP_BENCH_HPP

// Seeded instance families run through both solvers on both graphs.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dkcsp/colorgraph.hpp"
#include "dkcsp/covercode.hpp"
#include "dkcsp/formula.hpp"
#include "dkcsp/search.hpp"

namespace dkcsp {

struct BenchConfig {
  int n = 8;
  int d = 3;
  int k = 3;
  int m = 20;
  std::size_t count = 10;
  std::uint64_t seed = 1;
  bool planted = false;
  std::uint64_t repetitions = 1000;
  int steps_multiplier = 0;  // 0: default_steps_multiplier(d)
  std::uint64_t block_cap = kDefaultBlockCap;
  int jobs = 1;
};

struct BenchRow {
  std::size_t instance = 0;
  std::string method;
  std::string graph;
  SolveStatus result = SolveStatus::unknown;
  std::uint64_t nodes = 0;
  std::uint64_t balls = 0;
  std::uint64_t reps = 0;
  double millis = 0.0;
};

/// Instance i of a family: formula seed is stream i of the family seed.
inline Formula bench_instance(const BenchConfig& cfg, std::size_t i) {
  Rng rng = make_stream(cfg.seed, i);
  const std::uint64_t formula_seed = rng();
  std::optional<Assignment> planted;
  if (cfg.planted) {
    Assignment a(static_cast<std::size_t>(cfg.n), 1);
    for (int& c : a.colors) c = uniform_int(rng, 1, cfg.d);
    planted = a;
  }
  return generate_random(cfg.n, cfg.d, cfg.k, cfg.m, formula_seed, planted);
}

/// Covering codes are built once per graph and not included in the timings.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  const std::vector<ColorGraph> graphs{ColorGraph::complete(cfg.d), ColorGraph::directed_cycle(cfg.d)};
  std::vector<CoveringCode> codes;
  for (const auto& g : graphs) codes.push_back(build_code(g, cfg.n, cfg.k, cfg.block_cap));
  const int mult = cfg.steps_multiplier > 0 ? cfg.steps_multiplier : default_steps_multiplier(cfg.d);

  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const Formula f = bench_instance(cfg, i);
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      for (const char* method : {"det", "schoening"}) {
        const auto start = std::chrono::steady_clock::now();
        const SolveResult r = std::string(method) == "det"
                                  ? det_solve(f, codes[gi], cfg.jobs)
                                  : schoening_solve(f, graphs[gi], cfg.repetitions, mult,
                                                    make_stream(~cfg.seed, i)(), cfg.jobs);
        const auto stop = std::chrono::steady_clock::now();
        rows.push_back({i, method, graphs[gi].name(), r.status, r.stats.nodes_visited, r.stats.balls_searched,
                        r.stats.repetitions, std::chrono::duration<double, std::milli>(stop - start).count()});
      }
    }
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "instance,method,graph,result,nodes,balls,reps,millis\n";
  for (const auto& r : rows)
    out << r.instance << ',' << r.method << ',' << r.graph << ',' << to_string(r.result) << ',' << r.nodes << ','
        << r.balls << ',' << r.reps << ',' << r.millis << '\n';
}

/// Total ball-search nodes per (method, graph).
inline std::map<std::pair<std::string, std::string>, std::uint64_t> total_nodes(const std::vector<BenchRow>& rows) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> out;
  for (const auto& r : rows) out[{r.method, r.graph}] += r.nodes;
  return out;
}

}  // namespace dkcsp

#endif  // DKCSP_BENCH_HPP
