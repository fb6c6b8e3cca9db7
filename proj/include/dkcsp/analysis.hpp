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

#ifndef DKCSP_ANALYSIS_HPP
#define DKCSP_ANALYSIS_HPP

// Per-variable running-time bases and the random-walk Markov chain.
//
// Bases b mean b^n * poly(n). Search over a covering code with profile
// (d_0..d_s), out-degree delta and x = 1/(k delta) costs
//   d / sum_i d_i (k delta)^{-i}
// per variable; the complete graph gives dk/(k+1), the directed cycle
// d(k-1)/k * k^d/(k^d-1).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dkcsp/colorgraph.hpp"
#include "dkcsp/rng.hpp"
#include "dkcsp/volume.hpp"

namespace dkcsp {

namespace detail {
inline void check_params(int d, int k) {
  if (d < 2 || k < 2)
    throw std::invalid_argument("need d >= 2 and k >= 2, got d=" + std::to_string(d) + " k=" + std::to_string(k));
}
}  // namespace detail

/// Randomized walk: d(k-1)/k.
inline Rational base_schoening(int d, int k) {
  detail::check_params(d, k);
  return Rational(static_cast<long long>(d) * (k - 1), k);
}

/// Hamming-ball covering code: dk/(k+1).
inline Rational base_det_complete(int d, int k) {
  detail::check_params(d, k);
  return Rational(static_cast<long long>(d) * k, k + 1);
}

/// Directed-cycle covering code: d(k-1)/k * k^d/(k^d - 1).
inline Rational base_det_cycle(int d, int k) {
  detail::check_params(d, k);
  const BigInt kd = pow(BigInt(k), d);
  return base_schoening(d, k) * Rational(kd, kd - 1);
}

/// d / sum_i d_i (k d_1)^{-i} for any distance-regular profile.
inline Rational base_for_graph(const DistanceProfile& p, int k) {
  detail::check_params(p.d, k);
  if (p.delta < 1) throw std::invalid_argument("base_for_graph: graph has no edges");
  return Rational(p.d) / profile_polynomial(p, Rational(1, static_cast<long long>(k) * p.delta));
}

inline constexpr double kOptimalityTolerance = 1e-12;

/// True when p is no better than the directed cycle on the same colors.
inline bool cycle_optimality_check(const DistanceProfile& p, int k) {
  const Rational mine = base_for_graph(p, k);
  const Rational cycle = base_for_graph(detail::cycle_profile(p.d), k);
  return to_double(mine - cycle) >= -kOptimalityTolerance;
}

struct BaseReport {
  int d = 0;
  int k = 0;
  Rational schoening_base;
  Rational det_complete_base;
  Rational det_cycle_base;
  std::optional<Rational> graph_base;  // for an extra profile, when given
  GraphKind recommended_graph = GraphKind::cycle;
};

inline BaseReport predict(int d, int k, const std::optional<DistanceProfile>& extra = std::nullopt) {
  BaseReport r;
  r.d = d;
  r.k = k;
  r.schoening_base = base_schoening(d, k);
  r.det_complete_base = base_det_complete(d, k);
  r.det_cycle_base = base_det_cycle(d, k);
  if (extra) {
    if (extra->d != d) throw std::invalid_argument("predict: graph color count does not match d");
    r.graph_base = base_for_graph(*extra, k);
  }
  r.recommended_graph = r.det_cycle_base < r.det_complete_base ? GraphKind::cycle : GraphKind::complete;
  return r;
}

// ---------------------------------------------------------------------------
// Walk chain: state j = distance to a fixed solution; j -> j-1 w.p. 1/k,
// j -> j+d-1 w.p. (k-1)/k, 0 absorbing. P_j = lambda^j where lambda solves
// lambda = 1/k + (k-1)/k lambda^d.

struct LambdaSolution {
  int d = 0;
  int k = 0;
  double lambda = 1.0;
  double residual = 0.0;
  bool degenerate = false;  // d(k-1) <= k: the walk drifts down, lambda = 1
};

inline double lambda_equation(int d, int k, double lambda) {
  return 1.0 / k + (k - 1.0) / k * std::pow(lambda, d) - lambda;
}

/// Root of lambda_equation in (0, 1) by bisection. The equation is convex on
/// [0, 1] with value 1/k at 0 and a root at 1; the root inside (0, 1) exists
/// exactly when the slope at 1, d(k-1)/k - 1, is positive.
inline LambdaSolution solve_lambda(int d, int k) {
  detail::check_params(d, k);
  LambdaSolution s;
  s.d = d;
  s.k = k;
  if (static_cast<long long>(d) * (k - 1) <= k) {
    s.degenerate = true;
    s.lambda = 1.0;
    s.residual = std::abs(lambda_equation(d, k, 1.0));
    return s;
  }
  double lo = 0.0;
  double hi = 1.0 - 1e-3;
  while (lambda_equation(d, k, hi) >= 0.0) hi = 0.5 * (hi + 1.0);
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (lambda_equation(d, k, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  s.lambda = 0.5 * (lo + hi);
  s.residual = std::abs(lambda_equation(d, k, s.lambda));
  return s;
}

/// Probability of ever reaching 0 from state j.
inline double reach_probability(int d, int k, int j) {
  if (j < 0) throw std::invalid_argument("reach_probability: j must be >= 0");
  return std::pow(solve_lambda(d, k).lambda, j);
}

/// |P_j - (1/k) P_{j-1} - ((k-1)/k) P_{j+d-1}| for j >= 1.
inline double reach_recurrence_residual(int d, int k, int j) {
  if (j < 1) throw std::invalid_argument("reach_recurrence_residual: j must be >= 1");
  return std::abs(reach_probability(d, k, j) - reach_probability(d, k, j - 1) / k -
                  (k - 1.0) / k * reach_probability(d, k, j + d - 1));
}

struct IdentityCheck {
  double lhs = 0.0;  // sum_j T_cycle(n, j) lambda^j / d^n
  double rhs = 0.0;  // (k / (d(k-1)))^n
  double relative_error() const { return std::abs(lhs - rhs) / rhs; }
};

/// Success probability of the cycle walk from a uniform start, computed from
/// the exact shell counts, against its closed form.
inline IdentityCheck success_probability_identity(int d, int k, int n) {
  detail::check_params(d, k);
  if (n < 0) throw std::invalid_argument("success_probability_identity: n must be >= 0");
  const double lambda = solve_lambda(d, k).lambda;
  const ShellTable table = shell_counts(detail::cycle_profile(d), n);
  const BigInt points = pow(BigInt(d), n);
  IdentityCheck out;
  // Horner in lambda keeps every term positive
  long double acc = 0.0L;
  for (int j = table.max_radius(); j >= 0; --j)
    acc = acc * lambda + (Rational(table.shell(j), points)).convert_to<long double>();
  out.lhs = static_cast<double>(acc);
  out.rhs = std::pow(static_cast<double>(k) / (static_cast<double>(d) * (k - 1)), n);
  return out;
}

struct MarkovEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double frequency = 0.0;
  double std_error = 0.0;  // binomial standard error of frequency
};

/// Fraction of simulated walks from j_start that reach 0 within max_steps.
/// Trial i uses stream i of seed.
inline MarkovEstimate markov_simulate(int d, int k, int j_start, std::uint64_t max_steps, std::uint64_t trials,
                                      std::uint64_t seed, int jobs = 1) {
  detail::check_params(d, k);
  if (trials < 1) throw std::invalid_argument("markov_simulate: need at least one trial");
  if (j_start < 0) throw std::invalid_argument("markov_simulate: j_start must be >= 0");
  auto trial = [&](std::uint64_t i) -> bool {
    Rng rng = make_stream(seed, i);
    std::uniform_int_distribution<int> pick(0, k - 1);
    std::uint64_t j = static_cast<std::uint64_t>(j_start);
    for (std::uint64_t t = 0; j > 0; ++t) {
      // each step lowers j by at most one
      if (j > max_steps - t) return false;
      j = pick(rng) == 0 ? j - 1 : j + static_cast<std::uint64_t>(d - 1);
    }
    return true;
  };
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(std::max(jobs, 1)), 0);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < std::max(jobs, 1); ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t i = static_cast<std::uint64_t>(w); i < trials; i += static_cast<std::uint64_t>(jobs > 1 ? jobs : 1))
          hits[static_cast<std::size_t>(w)] += trial(i);
      });
  }
  MarkovEstimate est;
  est.trials = trials;
  for (auto h : hits) est.hits += h;
  est.frequency = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.frequency * (1.0 - est.frequency) / static_cast<double>(trials));
  return est;
}

}  // namespace dkcsp

#endif  // DKCSP_ANALYSIS_HPP
