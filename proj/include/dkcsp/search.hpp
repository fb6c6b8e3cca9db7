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

#ifndef DKCSP_SEARCH_HPP
#define DKCSP_SEARCH_HPP

// Ball search (deterministic branching on a falsified constraint), the
// randomized walk, and the two solver drivers built on them.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dkcsp/colorgraph.hpp"
#include "dkcsp/covercode.hpp"
#include "dkcsp/formula.hpp"
#include "dkcsp/rng.hpp"

namespace dkcsp {

struct SearchStats {
  std::uint64_t nodes_visited = 0;   // ball-search invocations
  std::uint64_t balls_searched = 0;  // codewords processed
  std::uint64_t repetitions = 0;     // randomized restarts
  std::uint64_t steps = 0;           // walk steps
  std::uint64_t max_ball_nodes = 0;  // largest node count of a single ball

  SearchStats& operator+=(const SearchStats& o) {
    nodes_visited += o.nodes_visited;
    balls_searched += o.balls_searched;
    repetitions += o.repetitions;
    steps += o.steps;
    max_ball_nodes = std::max(max_ball_nodes, o.max_ball_nodes);
    return *this;
  }
  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

enum class SolveStatus { satisfiable, unsatisfiable, unknown };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::satisfiable: return "SAT";
    case SolveStatus::unsatisfiable: return "UNSAT";
    case SolveStatus::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

struct SolveResult {
  SolveStatus status = SolveStatus::unknown;
  std::optional<Assignment> witness;
  SearchStats stats;
  std::size_t code_size = 0;  // deterministic solver only
  int radius = 0;             // deterministic solver only

  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

/// Upper bound on ball-search nodes: sum_{i=0}^{r} (k * delta)^i.
inline std::uint64_t ball_node_bound(int k, int delta, int r) {
  const std::uint64_t branch = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(delta);
  std::uint64_t total = 0, term = 1;
  for (int i = 0; i <= r; ++i) {
    total += term;
    term *= branch;
  }
  return total;
}

struct BallSearchResult {
  std::optional<Assignment> witness;
  std::uint64_t nodes = 0;
};

namespace detail {

inline void check_graph_matches(const Formula& f, const ColorGraph& g) {
  if (g.num_colors() != f.num_colors())
    throw std::invalid_argument("graph has d=" + std::to_string(g.num_colors()) +
                                " but formula has d=" + std::to_string(f.num_colors()));
}

class BallSearcher {
 public:
  BallSearcher(const Formula& f, const ColorGraph& g) : f_(f), g_(g) {}

  bool run(std::vector<int>& colors, int r) {
    ++nodes;
    const std::size_t idx = first_unsatisfied(f_, colors);
    if (idx == kNoConstraint) return true;
    if (r == 0) return false;
    for (const Literal& lit : f_.constraints()[idx].literals) {
      int& slot = colors[static_cast<std::size_t>(lit.var - 1)];
      for (int next : g_.out_neighbors(lit.color)) {
        slot = next;
        if (run(colors, r - 1)) return true;
      }
      slot = lit.color;
    }
    return false;
  }

  std::uint64_t nodes = 0;

 private:
  const Formula& f_;
  const ColorGraph& g_;
};

inline Assignment verified(const Formula& f, Assignment a) {
  if (!satisfies(f, a)) throw std::logic_error("solver produced an assignment that does not satisfy the formula");
  return a;
}

// Runs task(i) for i = 0..count-1 until one succeeds. The winner is always
// the lowest successful index, and stats cover exactly tasks 0..winner, so
// the outcome does not depend on the number of workers.
template <class Task>
std::optional<std::size_t> first_success(std::size_t count, int jobs, Task&& task, SearchStats& stats) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      auto [ok, s] = task(i);
      stats += s;
      if (ok) return i;
    }
    return std::nullopt;
  }
  std::vector<SearchStats> per_task(count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count || i >= best.load()) return;
          auto [ok, s] = task(i);
          per_task[i] = s;
          if (ok) {
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
          }
        }
      });
    }
  }
  const std::size_t winner = best.load();
  const std::size_t last = winner < count ? winner + 1 : count;
  for (std::size_t i = 0; i < last; ++i) stats += per_task[i];
  if (winner < count) return winner;
  return std::nullopt;
}

}  // namespace detail

/// Finds a satisfying assignment within G-distance r of center, branching on
/// the lowest-index falsified constraint: each literal (x != c) is repaired
/// by moving x along every edge c -> c' of g. First success in that order wins.
inline BallSearchResult g_searchball(const Formula& f, const ColorGraph& g, const Assignment& center, int r) {
  detail::check_graph_matches(f, g);
  check_assignment(f, center);
  if (r < 0) throw std::invalid_argument("g_searchball: r must be >= 0");
  detail::BallSearcher searcher(f, g);
  std::vector<int> colors = center.colors;
  BallSearchResult out;
  if (searcher.run(colors, r)) out.witness = detail::verified(f, Assignment(std::move(colors)));
  out.nodes = searcher.nodes;
  return out;
}

/// Hamming-ball search; the complete graph K_d.
inline BallSearchResult searchball(const Formula& f, const Assignment& center, int r) {
  return g_searchball(f, ColorGraph::complete(f.num_colors()), center, r);
}

struct WalkResult {
  std::optional<Assignment> witness;
  std::uint64_t steps = 0;
};

struct NoWalkObserver {
  void operator()(const Assignment&, const Literal&, int) const {}
};

/// One random-walk run: uniform start, then up to `steps` repairs of the
/// lowest-index falsified constraint (uniform literal, uniform out-neighbor
/// of its color). observer(before, literal, new_color) sees every move.
template <class Observer = NoWalkObserver>
WalkResult schoening_run(const Formula& f, const ColorGraph& g, std::uint64_t steps, Rng& rng,
                         Observer&& observer = {}) {
  detail::check_graph_matches(f, g);
  Assignment a(static_cast<std::size_t>(f.num_vars()), 1);
  for (int& c : a.colors) c = uniform_int(rng, 1, f.num_colors());
  for (std::uint64_t t = 0;; ++t) {
    const std::size_t idx = first_unsatisfied(f, a.colors);
    if (idx == kNoConstraint) return {detail::verified(f, std::move(a)), t};
    const auto& lits = f.constraints()[idx].literals;
    if (t == steps || lits.empty()) return {std::nullopt, t};
    const Literal& lit = lits[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(lits.size()) - 1))];
    const auto& nbrs = g.out_neighbors(lit.color);
    if (nbrs.empty())
      throw std::invalid_argument("schoening_run: color " + std::to_string(lit.color) + " has no out-neighbor");
    const int next = nbrs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(nbrs.size()) - 1))];
    observer(std::as_const(a), lit, next);
    a.colors[static_cast<std::size_t>(lit.var - 1)] = next;
  }
}

/// Default walk length multiplier: 3(d-1), i.e. 3n steps for d = 2.
inline int default_steps_multiplier(int d) { return 3 * (d - 1); }

/// Repeats schoening_run with c*n steps; repetition i draws from stream i of seed.
inline SolveResult schoening_solve(const Formula& f, const ColorGraph& g, std::uint64_t repetitions,
                                   int steps_multiplier, std::uint64_t seed, int jobs = 1) {
  detail::check_graph_matches(f, g);
  if (repetitions < 1) throw std::invalid_argument("schoening_solve: need at least one repetition");
  if (steps_multiplier < 0) throw std::invalid_argument("schoening_solve: steps multiplier must be >= 0");
  for (int c = 1; c <= g.num_colors(); ++c)
    if (g.out_neighbors(c).empty())
      throw std::invalid_argument("schoening_solve: color " + std::to_string(c) + " has no out-neighbor");
  const std::uint64_t steps = static_cast<std::uint64_t>(steps_multiplier) * static_cast<std::uint64_t>(f.num_vars());

  std::vector<std::optional<Assignment>> found(jobs > 1 ? repetitions : 1);
  SolveResult result;
  const auto winner = detail::first_success(
      repetitions, jobs,
      [&](std::size_t i) {
        Rng rng = make_stream(seed, i);
        WalkResult w = schoening_run(f, g, steps, rng);
        SearchStats s;
        s.repetitions = 1;
        s.steps = w.steps;
        const bool ok = w.witness.has_value();
        if (ok) found[jobs > 1 ? i : 0] = std::move(w.witness);
        return std::pair{ok, s};
      },
      result.stats);
  if (winner) {
    result.status = SolveStatus::satisfiable;
    result.witness = found[jobs > 1 ? *winner : 0];
  }
  return result;
}

/// Searches the ball of every codeword in order; complete by coverage.
inline SolveResult det_solve(const Formula& f, const CoveringCode& code, int jobs = 1) {
  detail::check_graph_matches(f, code.graph);
  if (code.n != f.num_vars())
    throw std::invalid_argument("det_solve: code length " + std::to_string(code.n) + " does not match n=" +
                                std::to_string(f.num_vars()));
  SolveResult result;
  result.code_size = code.size();
  result.radius = code.radius;
  std::vector<std::optional<Assignment>> found(jobs > 1 ? code.size() : 1);
  const auto winner = detail::first_success(
      code.size(), jobs,
      [&](std::size_t i) {
        BallSearchResult b = g_searchball(f, code.graph, code.codewords[i], code.radius);
        SearchStats s;
        s.nodes_visited = b.nodes;
        s.max_ball_nodes = b.nodes;
        s.balls_searched = 1;
        const bool ok = b.witness.has_value();
        if (ok) found[jobs > 1 ? i : 0] = std::move(b.witness);
        return std::pair{ok, s};
      },
      result.stats);
  if (winner) {
    result.status = SolveStatus::satisfiable;
    result.witness = found[jobs > 1 ? *winner : 0];
  } else {
    result.status = SolveStatus::unsatisfiable;
  }
  return result;
}

inline SolveResult det_solve(const Formula& f, const ColorGraph& g, std::uint64_t block_cap = kDefaultBlockCap,
                             int jobs = 1) {
  detail::check_graph_matches(f, g);
  return det_solve(f, build_code(g, f.num_vars(), f.width(), block_cap), jobs);
}

}  // namespace dkcsp

#endif  // DKCSP_SEARCH_HPP
