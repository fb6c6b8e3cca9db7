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

#ifndef DKCSP_VOLUME_HPP
#define DKCSP_VOLUME_HPP

// Exact shell counts T(n, r) and ball volumes for product distances, plus
// the generating-function bounds on those volumes.
//
// With a distance profile (d_0, ..., d_s) the shells satisfy
//   T(n, r) = sum_i d_i T(n-1, r-i),   T(0, 0) = 1,
// equivalently sum_r T(n, r) x^r = (sum_i d_i x^i)^n.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dkcsp/colorgraph.hpp"

namespace dkcsp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(long long num, long long den = 1) { return Rational(num, den); }

inline Rational pow(const Rational& base, int exp) {
  Rational out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

inline BigInt pow(const BigInt& base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

struct ShellTable {
  DistanceProfile profile;
  int n = 0;
  std::vector<BigInt> counts;  // counts[r] = T(n, r), r = 0..diameter*n

  int max_radius() const { return static_cast<int>(counts.size()) - 1; }

  BigInt shell(int r) const {
    if (r < 0 || r > max_radius()) return 0;
    return counts[static_cast<std::size_t>(r)];
  }

  /// Vol(n, r) = T(n, 0) + ... + T(n, r).
  BigInt volume(int r) const {
    BigInt v = 0;
    for (int j = 0; j <= r && j <= max_radius(); ++j) v += counts[static_cast<std::size_t>(j)];
    return v;
  }

  BigInt total() const { return volume(max_radius()); }
};

inline ShellTable shell_counts(const DistanceProfile& p, int n) {
  if (n < 0) throw std::invalid_argument("shell_counts: n must be >= 0");
  std::vector<BigInt> row{1};
  for (int level = 1; level <= n; ++level) {
    std::vector<BigInt> next(row.size() + static_cast<std::size_t>(p.diameter));
    for (std::size_t r = 0; r < row.size(); ++r) {
      if (row[r] == 0) continue;
      for (std::size_t i = 0; i < p.counts.size(); ++i) next[r + i] += row[r] * p.counts[i];
    }
    row = std::move(next);
  }
  return ShellTable{p, n, std::move(row)};
}

inline BigInt ball_volume(const DistanceProfile& p, int n, int r) {
  if (r < 0) throw std::invalid_argument("ball_volume: r must be >= 0");
  return shell_counts(p, n).volume(r);
}

/// The radius maximizing T(n, r) * x^r, smallest on ties.
inline int select_radius(const ShellTable& table, const Rational& x) {
  if (x < 0) throw std::invalid_argument("select_radius: x must be >= 0");
  int best = 0;
  Rational best_score = table.shell(0);
  Rational xr = 1;
  for (int r = 1; r <= table.max_radius(); ++r) {
    xr *= x;
    const Rational score = Rational(table.shell(r)) * xr;
    if (score > best_score) {
      best_score = score;
      best = r;
    }
  }
  return best;
}

inline int select_radius(const DistanceProfile& p, int n, const Rational& x) {
  return select_radius(shell_counts(p, n), x);
}

/// sum_i d_i x^i
inline Rational profile_polynomial(const DistanceProfile& p, const Rational& x) {
  Rational sum = 0;
  Rational xi = 1;
  for (int c : p.counts) {
    sum += c * xi;
    xi *= x;
  }
  return sum;
}

/// Radius chosen by select_radius together with a lower bound on Vol(n, r).
struct RadiusBound {
  int radius = 0;
  Rational bound;
};

namespace detail {

inline DistanceProfile complete_profile(int d) {
  return DistanceProfile{{1, d - 1}, 1, d - 1, d};
}

inline DistanceProfile cycle_profile(int d) {
  return DistanceProfile{std::vector<int>(static_cast<std::size_t>(d), 1), d - 1, 1, d};
}

// (sum_i d_i x^i)^n / (terms * x^r), where terms is the number of shells
inline RadiusBound averaging_lower_bound(const DistanceProfile& p, int n, const Rational& x) {
  if (n < 0) throw std::invalid_argument("volume bound: n must be >= 0");
  if (x < 0) throw std::invalid_argument("volume bound: x must be >= 0");
  const ShellTable table = shell_counts(p, n);
  const int r = select_radius(table, x);
  const Rational terms = static_cast<long long>(p.diameter) * n + 1;
  return {r, pow(profile_polynomial(p, x), n) / (terms * pow(x, r))};
}

}  // namespace detail

/// Hamming balls: Vol(n, r) >= (1 + (d-1)x)^n / ((n+1) x^r).
inline RadiusBound lower_bound_complete(int d, int n, const Rational& x) {
  if (d < 2) throw std::invalid_argument("lower_bound_complete: d must be >= 2");
  return detail::averaging_lower_bound(detail::complete_profile(d), n, x);
}

/// Directed-cycle balls: Vol(n, r) >= (1 + x + ... + x^{d-1})^n / (((d-1)n+1) x^r).
inline RadiusBound lower_bound_cycle(int d, int n, const Rational& x) {
  if (d < 2) throw std::invalid_argument("lower_bound_cycle: d must be >= 2");
  return detail::averaging_lower_bound(detail::cycle_profile(d), n, x);
}

/// Vol(n, r) <= (sum_i d_i x^i)^n / x^r for x in [0, 1].
inline Rational upper_bound(const DistanceProfile& p, int n, int r, const Rational& x) {
  if (x < 0 || x > 1) throw std::invalid_argument("upper_bound: x must lie in [0, 1]");
  if (r < 0) throw std::invalid_argument("upper_bound: r must be >= 0");
  if (x == 0 && r > 0) throw std::domain_error("upper_bound: x = 0 only valid for r = 0");
  return pow(profile_polynomial(p, x), n) / pow(x, r);
}

}  // namespace dkcsp

#endif  // DKCSP_VOLUME_HPP
