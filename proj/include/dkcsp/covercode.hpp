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

#ifndef DKCSP_COVERCODE_HPP
#define DKCSP_COVERCODE_HPP

// Covering codes for G-balls B_r(a) = {b : d_G(a, b) <= r}.
//
// Blocks of m coordinates are covered by greedy set cover over [d]^m; the
// code for [d]^n is the Cartesian product of block codes, whose covering
// radius is the sum of block radii because the product distance is additive.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dkcsp/colorgraph.hpp"
#include "dkcsp/formula.hpp"
#include "dkcsp/volume.hpp"

namespace dkcsp {

inline constexpr std::uint64_t kDefaultBlockCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultVerifyCap = 10'000'000;
inline constexpr std::uint64_t kMaxCodewords = std::uint64_t{1} << 26;

/// Enumerates G-balls inside [d]^m, with points encoded as integers whose
/// base-d digits (most significant first) are the colors minus one. Index
/// order is therefore lexicographic order of assignments. With inward set,
/// for_each visits the points b with d_G(b, center) <= r instead.
class BallEnumerator {
 public:
  BallEnumerator(const ColorGraph& g, int m, bool inward = false) : d_(g.num_colors()), m_(m) {
    reach_.resize(static_cast<std::size_t>(d_));
    for (int from = 1; from <= d_; ++from) {
      auto& list = reach_[static_cast<std::size_t>(from - 1)];
      for (int to = 1; to <= d_; ++to) {
        const int dist = inward ? g.distance(to, from) : g.distance(from, to);
        if (dist != kUnreachable) list.push_back({dist, to - 1});
      }
      std::sort(list.begin(), list.end());
    }
  }

  int num_coords() const { return m_; }

  std::uint64_t encode(const Assignment& a) const {
    std::uint64_t idx = 0;
    for (int c : a.colors) idx = idx * static_cast<std::uint64_t>(d_) + static_cast<std::uint64_t>(c - 1);
    return idx;
  }

  Assignment decode(std::uint64_t idx) const {
    Assignment a(static_cast<std::size_t>(m_), 1);
    for (int pos = m_ - 1; pos >= 0; --pos) {
      a.colors[static_cast<std::size_t>(pos)] = static_cast<int>(idx % static_cast<std::uint64_t>(d_)) + 1;
      idx /= static_cast<std::uint64_t>(d_);
    }
    return a;
  }

  /// Calls visit(index) for every point within distance r of center.
  template <class Visit>
  void for_each(const Assignment& center, int r, Visit&& visit) const {
    walk(center, 0, r, 0, visit);
  }

 private:
  template <class Visit>
  void walk(const Assignment& center, int pos, int budget, std::uint64_t prefix, Visit& visit) const {
    if (pos == m_) {
      visit(prefix);
      return;
    }
    const auto& list = reach_[static_cast<std::size_t>(center.colors[static_cast<std::size_t>(pos)] - 1)];
    for (const auto& [dist, to] : list) {
      if (dist > budget) break;
      walk(center, pos + 1, budget - dist, prefix * static_cast<std::uint64_t>(d_) + static_cast<std::uint64_t>(to),
           visit);
    }
  }

  int d_;
  int m_;
  std::vector<std::vector<std::pair<int, int>>> reach_;  // (distance, 0-based target)
};

/// Size guarantee of greedy set cover when every point lies in exactly
/// `volume` candidate balls: (1 + ln N) * N / volume.
inline double greedy_size_bound(std::uint64_t points, const BigInt& volume) {
  const double n = static_cast<double>(points);
  return (1.0 + std::log(n)) * n / volume.convert_to<double>();
}

namespace detail {

inline DistanceProfile coverable_profile(const ColorGraph& g) {
  DistanceProfile p = profile(g);
  if (!p.strongly_connected())
    throw std::invalid_argument("covering code: graph " + g.name() +
                                " is not strongly connected; balls cannot reach every point");
  return p;
}

inline std::uint64_t space_size(int d, int m, std::uint64_t cap, const char* who) {
  const auto size = bounded_power(static_cast<std::uint64_t>(d), m, cap);
  if (!size)
    throw std::length_error(std::string(who) + ": " + std::to_string(d) + "^" + std::to_string(m) +
                            " points exceed cap " + std::to_string(cap));
  return *size;
}

}  // namespace detail

/// Greedy set cover of [d]^m by radius-r balls: repeatedly take the center
/// covering the most uncovered points, lexicographically smallest on ties.
inline std::vector<Assignment> greedy_cover(const ColorGraph& g, int m, int r,
                                            std::uint64_t block_cap = kDefaultBlockCap) {
  if (m < 0 || r < 0) throw std::invalid_argument("greedy_cover: m and r must be >= 0");
  const DistanceProfile p = detail::coverable_profile(g);
  const std::uint64_t points = detail::space_size(g.num_colors(), m, block_cap, "greedy_cover");
  const std::uint64_t volume = ball_volume(p, m, r).convert_to<std::uint64_t>();
  const BallEnumerator balls(g, m);

  // gain[c] counts uncovered points of B_r(c) and is kept exact by walking
  // the inward ball of each newly covered point. Heap entries go stale as
  // gains shrink and are refreshed when they reach the top.
  const BallEnumerator inward(g, m, true);
  std::vector<std::uint64_t> gain(points, volume);
  struct Entry {
    std::uint64_t gain;
    std::uint64_t index;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    return a.gain != b.gain ? a.gain < b.gain : a.index > b.index;
  };
  std::vector<Entry> initial;
  initial.reserve(points);
  for (std::uint64_t i = 0; i < points; ++i) initial.push_back({volume, i});
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse, std::move(initial));

  std::vector<char> covered(points, 0);
  std::uint64_t uncovered = points;
  std::vector<Assignment> code;
  while (uncovered > 0) {
    const Entry top = heap.top();
    heap.pop();
    const std::uint64_t current = gain[top.index];
    if (current < top.gain) {
      if (current > 0) heap.push({current, top.index});
      continue;
    }
    const Assignment center = balls.decode(top.index);
    balls.for_each(center, r, [&](std::uint64_t idx) {
      if (covered[idx]) return;
      covered[idx] = 1;
      --uncovered;
      inward.for_each(balls.decode(idx), r, [&](std::uint64_t c) { --gain[c]; });
    });
    code.push_back(center);
  }
  return code;
}

/// A code over one block of coordinates.
struct BlockCode {
  int size = 0;    // number of coordinates
  int radius = 0;  // covering radius within the block
  std::vector<Assignment> codewords;
};

struct CoveringCode {
  ColorGraph graph;
  int n = 0;
  int radius = 0;
  std::vector<Assignment> codewords;
  std::vector<int> block_sizes;
  std::vector<int> block_radii;
  std::vector<std::size_t> block_counts;  // codewords per block

  std::size_t size() const { return codewords.size(); }
};

/// Cartesian product of block codes; blocks cover consecutive coordinates.
inline CoveringCode product_code(const ColorGraph& g, const std::vector<BlockCode>& blocks) {
  CoveringCode code{g, 0, 0, {}, {}, {}, {}};
  std::uint64_t count = 1;
  for (const auto& b : blocks) {
    if (b.codewords.empty()) throw std::invalid_argument("product_code: empty block code");
    for (const auto& w : b.codewords)
      if (w.size() != static_cast<std::size_t>(b.size))
        throw std::invalid_argument("product_code: codeword length does not match block size");
    if (count > kMaxCodewords / b.codewords.size())
      throw std::length_error("product_code: product exceeds " + std::to_string(kMaxCodewords) + " codewords");
    count *= b.codewords.size();
    code.n += b.size;
    code.radius += b.radius;
    code.block_sizes.push_back(b.size);
    code.block_radii.push_back(b.radius);
    code.block_counts.push_back(b.codewords.size());
  }
  code.codewords.reserve(count);
  // odometer over block choices, first block most significant
  std::vector<std::size_t> choice(blocks.size(), 0);
  for (;;) {
    Assignment w;
    w.colors.reserve(static_cast<std::size_t>(code.n));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& part = blocks[b].codewords[choice[b]].colors;
      w.colors.insert(w.colors.end(), part.begin(), part.end());
    }
    code.codewords.push_back(std::move(w));
    std::size_t b = blocks.size();
    while (b > 0 && ++choice[b - 1] == blocks[b - 1].codewords.size()) choice[--b] = 0;
    if (b == 0) break;
  }
  return code;
}

/// Block layout: the fewest blocks b with d^ceil(n/b) <= cap, larger blocks first.
inline std::vector<int> block_layout(int d, int n, std::uint64_t block_cap) {
  if (n == 0) return {};
  for (int b = 1; b <= n; ++b) {
    const int widest = (n + b - 1) / b;
    if (!bounded_power(static_cast<std::uint64_t>(d), widest, block_cap)) continue;
    std::vector<int> sizes;
    for (int i = 0; i < b; ++i) sizes.push_back(n / b + (i < n % b ? 1 : 0));
    return sizes;
  }
  throw std::length_error("block_layout: even a single coordinate (" + std::to_string(d) +
                          " points) exceeds block cap " + std::to_string(block_cap));
}

/// Code for [d]^n sized for (d,k)-CSP search: per-block radius maximizes
/// T(m, r) x^r at x = 1/(k * delta).
inline CoveringCode build_code(const ColorGraph& g, int n, int k,
                               std::uint64_t block_cap = kDefaultBlockCap) {
  if (n < 0) throw std::invalid_argument("build_code: n must be >= 0");
  if (k < 1) throw std::invalid_argument("build_code: k must be >= 1");
  const DistanceProfile p = detail::coverable_profile(g);
  const Rational x(1, static_cast<long long>(k) * p.delta);
  std::map<int, BlockCode> by_size;
  std::vector<BlockCode> blocks;
  for (int size : block_layout(g.num_colors(), n, block_cap)) {
    auto it = by_size.find(size);
    if (it == by_size.end()) {
      const int r = select_radius(p, size, x);
      it = by_size.emplace(size, BlockCode{size, r, greedy_cover(g, size, r, block_cap)}).first;
    }
    blocks.push_back(it->second);
  }
  return product_code(g, blocks);
}

struct CoverReport {
  bool covered = false;
  std::optional<Assignment> uncovered;  // first point not reached, if any

  explicit operator bool() const { return covered; }
};

/// Exhaustively checks that every point is within code.radius of a codeword,
/// measuring from the codeword to the point.
inline CoverReport verify_cover(const CoveringCode& code, std::uint64_t cap = kDefaultVerifyCap) {
  const int d = code.graph.num_colors();
  const std::uint64_t points = detail::space_size(d, code.n, cap, "verify_cover");
  const BallEnumerator balls(code.graph, code.n);
  std::vector<char> covered(points, 0);
  for (const auto& w : code.codewords) {
    if (w.size() != static_cast<std::size_t>(code.n))
      throw std::invalid_argument("verify_cover: codeword length mismatch");
    for (int c : w.colors)
      if (c < 1 || c > d) throw std::invalid_argument("verify_cover: codeword color out of range");
    balls.for_each(w, code.radius, [&](std::uint64_t idx) { covered[idx] = 1; });
  }
  for (std::uint64_t i = 0; i < points; ++i)
    if (!covered[i]) return {false, balls.decode(i)};
  return {true, std::nullopt};
}

// Code file: "code <d> <n> <r> <count>", then one codeword per line.
inline void write_code(std::ostream& out, const CoveringCode& code) {
  out << "code " << code.graph.num_colors() << ' ' << code.n << ' ' << code.radius << ' '
      << code.size() << '\n';
  for (const auto& w : code.codewords) {
    for (std::size_t i = 0; i < w.size(); ++i) out << (i ? " " : "") << w[i];
    out << '\n';
  }
}

/// Reads a code file; block metadata collapses to a single block.
inline CoveringCode read_code(std::istream& in, const ColorGraph& g) {
  std::string text;
  std::size_t line = 1;
  if (!std::getline(in, text)) throw ParseError(line, "missing code header");
  const auto head = detail::split_ws(text);
  if (head.size() != 5 || head[0] != "code") throw ParseError(line, "expected 'code <d> <n> <r> <count>'");
  const int d = detail::parse_small_int(head[1], line, "d");
  const int n = detail::parse_small_int(head[2], line, "n");
  const int r = detail::parse_small_int(head[3], line, "r");
  const long long count = detail::parse_int(head[4], line);
  if (d != g.num_colors()) throw ParseError(line, "code uses d=" + head[1] + " but graph has d=" +
                                                      std::to_string(g.num_colors()));
  if (count < 0) throw ParseError(line, "negative codeword count");
  CoveringCode code{g, n, r, {}, {n}, {r}, {}};
  for (long long i = 0; i < count; ++i) {
    ++line;
    if (!std::getline(in, text)) throw ParseError(line, "missing codeword");
    const auto toks = detail::split_ws(text);
    if (toks.size() != static_cast<std::size_t>(n)) throw ParseError(line, "codeword has wrong length");
    Assignment w;
    for (const auto& t : toks) {
      const int c = detail::parse_small_int(t, line, "color");
      if (c < 1 || c > d) throw ParseError(line, "color out of range");
      w.colors.push_back(c);
    }
    code.codewords.push_back(std::move(w));
  }
  code.block_counts = {code.codewords.size()};
  while (std::getline(in, text)) {
    ++line;
    if (!detail::is_blank(text)) throw ParseError(line, "trailing content after codewords");
  }
  return code;
}

}  // namespace dkcsp

#endif  // DKCSP_COVERCODE_HPP
