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

#ifndef DKCSP_FORMULA_HPP
#define DKCSP_FORMULA_HPP

// (d,k)-CSP formulas: n variables over colors 1..d, constraints are
// disjunctions of negative literals (x != c).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dkcsp/rng.hpp"

namespace dkcsp {

/// The literal (x_var != color). Both fields are 1-indexed.
struct Literal {
  int var = 0;
  int color = 0;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Constraint {
  std::vector<Literal> literals;

  std::size_t width() const { return literals.size(); }
  bool empty() const { return literals.empty(); }
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// A point of [d]^n. Storage is 0-based by position; color_of() takes the
/// 1-based variable index used by literals.
struct Assignment {
  std::vector<int> colors;

  Assignment() = default;
  explicit Assignment(std::vector<int> c) : colors(std::move(c)) {}
  Assignment(std::initializer_list<int> c) : colors(c) {}
  Assignment(std::size_t n, int color) : colors(n, color) {}

  std::size_t size() const { return colors.size(); }
  int operator[](std::size_t i) const { return colors[i]; }
  int& operator[](std::size_t i) { return colors[i]; }
  int color_of(int var) const { return colors[static_cast<std::size_t>(var - 1)]; }

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

class Formula {
 public:
  Formula(int num_vars, int num_colors, int width, std::vector<Constraint> constraints)
      : num_vars_(num_vars), num_colors_(num_colors), width_(width),
        constraints_(std::move(constraints)) {
    if (num_vars_ < 0) throw std::invalid_argument("formula: negative variable count");
    if (num_colors_ < 2) throw std::invalid_argument("formula: need at least 2 colors");
    if (width_ < 1) throw std::invalid_argument("formula: constraint width bound must be >= 1");
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      const auto& c = constraints_[i];
      if (c.width() > static_cast<std::size_t>(width_))
        throw std::invalid_argument("formula: constraint " + std::to_string(i) +
                                    " wider than k=" + std::to_string(width_));
      for (const auto& lit : c.literals) {
        if (lit.var < 1 || lit.var > num_vars_)
          throw std::invalid_argument("formula: variable " + std::to_string(lit.var) +
                                      " out of range");
        if (lit.color < 1 || lit.color > num_colors_)
          throw std::invalid_argument("formula: color " + std::to_string(lit.color) +
                                      " out of range");
      }
    }
  }

  /// Width bound k implied by the constraints alone (at least 1).
  static int natural_width(const std::vector<Constraint>& constraints) {
    std::size_t w = 1;
    for (const auto& c : constraints) w = std::max(w, c.width());
    return static_cast<int>(w);
  }

  int num_vars() const { return num_vars_; }
  int num_colors() const { return num_colors_; }
  int width() const { return width_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t num_constraints() const { return constraints_.size(); }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  int num_vars_;
  int num_colors_;
  int width_;
  std::vector<Constraint> constraints_;
};

inline bool is_valid_assignment(const Formula& f, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(f.num_vars())) return false;
  return std::all_of(a.colors.begin(), a.colors.end(),
                     [&](int c) { return c >= 1 && c <= f.num_colors(); });
}

inline void check_assignment(const Formula& f, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(f.num_vars()))
    throw std::invalid_argument("assignment length " + std::to_string(a.size()) +
                                " does not match n=" + std::to_string(f.num_vars()));
  if (!is_valid_assignment(f, a))
    throw std::invalid_argument("assignment color out of range 1.." +
                                std::to_string(f.num_colors()));
}

inline constexpr std::size_t kNoConstraint = std::numeric_limits<std::size_t>::max();

/// Index of the first constraint whose literals are all falsified, or
/// kNoConstraint. Unchecked; callers guarantee a matches f.
inline std::size_t first_unsatisfied(const Formula& f, std::span<const int> colors) {
  const auto& cs = f.constraints();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool falsified = true;
    for (const auto& lit : cs[i].literals) {
      if (colors[static_cast<std::size_t>(lit.var - 1)] != lit.color) {
        falsified = false;
        break;
      }
    }
    if (falsified) return i;
  }
  return kNoConstraint;
}

struct Evaluation {
  bool satisfied = true;
  std::optional<std::size_t> first_unsatisfied;
};

inline Evaluation evaluate(const Formula& f, const Assignment& a) {
  check_assignment(f, a);
  const std::size_t idx = first_unsatisfied(f, a.colors);
  if (idx == kNoConstraint) return {};
  return {false, idx};
}

inline bool satisfies(const Formula& f, const Assignment& a) {
  return is_valid_assignment(f, a) && first_unsatisfied(f, a.colors) == kNoConstraint;
}

/// Drops repeated literals inside a constraint and removes constraints that
/// mention one variable with two different colors (no assignment falsifies
/// both). Everything else keeps its order.
inline Formula normalize(const Formula& f) {
  std::vector<Constraint> out;
  out.reserve(f.num_constraints());
  for (const auto& c : f.constraints()) {
    Constraint kept;
    bool tautology = false;
    for (const auto& lit : c.literals) {
      bool duplicate = false;
      for (const auto& seen : kept.literals) {
        if (seen.var != lit.var) continue;
        if (seen.color == lit.color) {
          duplicate = true;
        } else {
          tautology = true;
        }
        break;
      }
      if (tautology) break;
      if (!duplicate) kept.literals.push_back(lit);
    }
    if (!tautology) out.push_back(std::move(kept));
  }
  return Formula(f.num_vars(), f.num_colors(), f.width(), std::move(out));
}

/// Random formula with m constraints of exactly k literals on k distinct
/// variables. With a planted assignment, constraints it falsifies are redrawn.
inline Formula generate_random(int n, int d, int k, int m, std::uint64_t seed,
                               const std::optional<Assignment>& planted = std::nullopt) {
  if (n < 0 || m < 0) throw std::invalid_argument("generate: n and m must be >= 0");
  if (d < 2) throw std::invalid_argument("generate: d must be >= 2");
  if (k < 1) throw std::invalid_argument("generate: k must be >= 1");
  if (k > n && m > 0)
    throw std::invalid_argument("generate: cannot pick k=" + std::to_string(k) +
                                " distinct variables out of n=" + std::to_string(n));
  if (planted && (planted->size() != static_cast<std::size_t>(n) ||
                  std::any_of(planted->colors.begin(), planted->colors.end(),
                              [&](int c) { return c < 1 || c > d; })))
    throw std::invalid_argument("generate: planted assignment does not fit (n, d)");

  Rng rng = make_stream(seed);
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::vector<Constraint> constraints;
  constraints.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Constraint c;
    for (;;) {
      std::iota(vars.begin(), vars.end(), 1);
      c.literals.clear();
      // partial Fisher-Yates: the first k slots become a uniform k-subset
      for (int j = 0; j < k; ++j) {
        const int pick = uniform_int(rng, j, n - 1);
        std::swap(vars[static_cast<std::size_t>(j)], vars[static_cast<std::size_t>(pick)]);
        c.literals.push_back({vars[static_cast<std::size_t>(j)], uniform_int(rng, 1, d)});
      }
      if (!planted) break;
      const bool falsified = std::all_of(c.literals.begin(), c.literals.end(), [&](const Literal& l) {
        return planted->color_of(l.var) == l.color;
      });
      if (!falsified) break;
    }
    constraints.push_back(std::move(c));
  }
  return Formula(n, d, k, std::move(constraints));
}

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

/// d^n, or nullopt once it exceeds limit.
inline std::optional<std::uint64_t> bounded_power(std::uint64_t base, int exp,
                                                  std::uint64_t limit) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > limit / base) return std::nullopt;
    v *= base;
  }
  if (v > limit) return std::nullopt;
  return v;
}

/// Lexicographically smallest satisfying assignment, by enumeration.
inline std::optional<Assignment> brute_force_solve(const Formula& f,
                                                   std::uint64_t cap = kDefaultBruteForceCap) {
  if (!bounded_power(static_cast<std::uint64_t>(f.num_colors()), f.num_vars(), cap))
    throw std::length_error("brute force: d^n exceeds cap " + std::to_string(cap));
  const int d = f.num_colors();
  Assignment a(static_cast<std::size_t>(f.num_vars()), 1);
  for (;;) {
    if (first_unsatisfied(f, a.colors) == kNoConstraint) return a;
    // odometer increment, last position fastest
    int pos = f.num_vars() - 1;
    while (pos >= 0 && a.colors[static_cast<std::size_t>(pos)] == d) {
      a.colors[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) return std::nullopt;
    ++a.colors[static_cast<std::size_t>(pos)];
  }
}

// ---------------------------------------------------------------------------
// Instance text format
//
//   c <comment>
//   c k <K>          optional: declared width bound (default: widest constraint)
//   p csp <n> <d> <m>
//   v1 c1 v2 c2 ... 0   (m lines)

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); });
}

inline long long parse_int(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

inline int parse_small_int(const std::string& tok, std::size_t line, const char* what) {
  const long long v = parse_int(tok, line);
  if (v < 0 || v > std::numeric_limits<int>::max())
    throw ParseError(line, std::string(what) + " out of range: " + tok);
  return static_cast<int>(v);
}

}  // namespace detail

inline Formula parse_instance(std::istream& in) {
  std::optional<int> declared_width;
  int n = 0, d = 0, m = 0;
  bool have_header = false;
  std::size_t header_line = 0;
  std::vector<Constraint> constraints;
  std::string text;
  std::size_t line = 0;

  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (detail::is_blank(text)) continue;
    if (text == "c" || text.rfind("c ", 0) == 0) {
      const auto toks = detail::split_ws(text);
      if (toks.size() == 3 && toks[1] == "k") {
        const int w = detail::parse_small_int(toks[2], line, "width");
        if (w < 1) throw ParseError(line, "declared width must be >= 1");
        declared_width = w;
      }
      continue;
    }
    const auto toks = detail::split_ws(text);
    if (!have_header) {
      if (toks.size() != 5 || toks[0] != "p" || toks[1] != "csp")
        throw ParseError(line, "expected header 'p csp <n> <d> <m>'");
      n = detail::parse_small_int(toks[2], line, "n");
      d = detail::parse_small_int(toks[3], line, "d");
      m = detail::parse_small_int(toks[4], line, "m");
      if (d < 2) throw ParseError(line, "d must be at least 2");
      have_header = true;
      header_line = line;
      constraints.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (constraints.size() == static_cast<std::size_t>(m))
      throw ParseError(line, "trailing content after " + std::to_string(m) + " constraints");
    if (toks.back() != "0") throw ParseError(line, "constraint line must end with 0");
    if ((toks.size() - 1) % 2 != 0)
      throw ParseError(line, "constraint line needs (variable, color) pairs");
    Constraint c;
    for (std::size_t i = 0; i + 1 < toks.size(); i += 2) {
      const long long v = detail::parse_int(toks[i], line);
      const long long col = detail::parse_int(toks[i + 1], line);
      if (v < 1 || v > n)
        throw ParseError(line, "variable " + toks[i] + " out of range for n=" + std::to_string(n));
      if (col < 1 || col > d)
        throw ParseError(line, "color " + toks[i + 1] + " out of range for d=" + std::to_string(d));
      c.literals.push_back({static_cast<int>(v), static_cast<int>(col)});
    }
    if (declared_width && c.width() > static_cast<std::size_t>(*declared_width))
      throw ParseError(line, "constraint of width " + std::to_string(c.width()) +
                                 " exceeds k=" + std::to_string(*declared_width));
    constraints.push_back(std::move(c));
  }
  if (!have_header) throw ParseError(line + 1, "missing 'p csp' header");
  if (constraints.size() != static_cast<std::size_t>(m))
    throw ParseError(line + 1, "expected " + std::to_string(m) + " constraints after header on line " +
                                   std::to_string(header_line) + ", found " +
                                   std::to_string(constraints.size()));
  const int width = declared_width.value_or(Formula::natural_width(constraints));
  return Formula(n, d, width, std::move(constraints));
}

inline Formula parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline void serialize_instance(std::ostream& out, const Formula& f) {
  if (f.width() != Formula::natural_width(f.constraints())) out << "c k " << f.width() << '\n';
  out << "p csp " << f.num_vars() << ' ' << f.num_colors() << ' ' << f.num_constraints() << '\n';
  for (const auto& c : f.constraints()) {
    for (const auto& lit : c.literals) out << lit.var << ' ' << lit.color << ' ';
    out << "0\n";
  }
}

inline std::string serialize_instance(const Formula& f) {
  std::ostringstream out;
  serialize_instance(out, f);
  return out.str();
}

// Witness format: "s SATISFIABLE" + "v c1 .. cn", or "s UNSATISFIABLE".
inline void write_witness(std::ostream& out, const std::optional<Assignment>& witness) {
  if (!witness) {
    out << "s UNSATISFIABLE\n";
    return;
  }
  out << "s SATISFIABLE\nv";
  for (int c : witness->colors) out << ' ' << c;
  out << '\n';
}

}  // namespace dkcsp

#endif  // DKCSP_FORMULA_HPP
