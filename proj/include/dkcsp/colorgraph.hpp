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

#ifndef DKCSP_COLORGRAPH_HPP
#define DKCSP_COLORGRAPH_HPP

// Graphs on the color set {1..d}. A graph G induces the distance
// d_G(a, b) = sum_i dist_G(a_i, b_i) on assignments, i.e. shortest paths in
// the n-fold Cartesian product of G. K_d gives the Hamming distance.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dkcsp/formula.hpp"

namespace dkcsp {

enum class GraphKind { complete, cycle, hypercube, custom };

inline const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::complete: return "complete";
    case GraphKind::cycle: return "cycle";
    case GraphKind::hypercube: return "hypercube";
    case GraphKind::custom: return "custom";
  }
  return "custom";
}

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Row-major d x d matrix of shortest-path lengths, 0-based color indices.
/// Unreachable pairs hold kUnreachable.
struct DistanceMatrix {
  int d = 0;
  std::vector<int> dist;
  bool has_unreachable = false;

  /// Distance between 1-based colors.
  int operator()(int from, int to) const {
    return dist[static_cast<std::size_t>((from - 1) * d + (to - 1))];
  }
};

class ColorGraph {
 public:
  /// Builds a graph from directed edges (u, v), 1-based. Duplicate edges are
  /// merged; self-loops are rejected.
  ColorGraph(int d, const std::vector<std::pair<int, int>>& edges,
             GraphKind kind = GraphKind::custom)
      : d_(d), kind_(kind), out_(static_cast<std::size_t>(d)) {
    if (d < 2) throw std::invalid_argument("color graph: need d >= 2");
    for (auto [u, v] : edges) {
      if (u < 1 || u > d || v < 1 || v > d)
        throw std::invalid_argument("color graph: edge (" + std::to_string(u) + "," +
                                    std::to_string(v) + ") out of range");
      if (u == v) throw std::invalid_argument("color graph: self-loop on " + std::to_string(u));
      out_[static_cast<std::size_t>(u - 1)].push_back(v);
    }
    for (auto& nbrs : out_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    distances_ = compute_distances();
  }

  static ColorGraph complete(int d) {
    if (d < 2) throw std::invalid_argument("complete graph: need d >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int u = 1; u <= d; ++u)
      for (int v = 1; v <= d; ++v)
        if (u != v) edges.emplace_back(u, v);
    return ColorGraph(d, edges, GraphKind::complete);
  }

  /// Directed cycle 1 -> 2 -> ... -> d -> 1.
  static ColorGraph directed_cycle(int d) {
    if (d < 2) throw std::invalid_argument("directed cycle: need d >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int u = 1; u <= d; ++u) edges.emplace_back(u, u % d + 1);
    return ColorGraph(d, edges, GraphKind::cycle);
  }

  /// The ell-cube on d = 2^ell colors; color c stands for the bits of c-1.
  static ColorGraph hypercube(int ell) {
    if (ell < 1 || ell > 16) throw std::invalid_argument("hypercube: need 1 <= ell <= 16");
    const int d = 1 << ell;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < d; ++u)
      for (int bit = 0; bit < ell; ++bit) edges.emplace_back(u + 1, (u ^ (1 << bit)) + 1);
    return ColorGraph(d, edges, GraphKind::hypercube);
  }

  int num_colors() const { return d_; }
  GraphKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }

  /// Sorted out-neighbors of a 1-based color.
  const std::vector<int>& out_neighbors(int color) const {
    return out_[static_cast<std::size_t>(color - 1)];
  }

  std::size_t num_edges() const {
    std::size_t m = 0;
    for (const auto& nbrs : out_) m += nbrs.size();
    return m;
  }

  const DistanceMatrix& distances() const { return distances_; }
  int distance(int from, int to) const { return distances_(from, to); }

  friend bool operator==(const ColorGraph& a, const ColorGraph& b) {
    return a.d_ == b.d_ && a.out_ == b.out_;
  }

 private:
  DistanceMatrix compute_distances() const {
    DistanceMatrix m;
    m.d = d_;
    m.dist.assign(static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_), kUnreachable);
    for (int src = 0; src < d_; ++src) {
      int* row = m.dist.data() + static_cast<std::size_t>(src) * static_cast<std::size_t>(d_);
      std::queue<int> frontier;
      row[src] = 0;
      frontier.push(src);
      while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (int v1 : out_[static_cast<std::size_t>(u)]) {
          const int v = v1 - 1;
          if (row[v] == kUnreachable) {
            row[v] = row[u] + 1;
            frontier.push(v);
          }
        }
      }
    }
    m.has_unreachable =
        std::find(m.dist.begin(), m.dist.end(), kUnreachable) != m.dist.end();
    return m;
  }

  int d_;
  GraphKind kind_;
  std::vector<std::vector<int>> out_;
  DistanceMatrix distances_;
};

inline DistanceMatrix pairwise_distances(const ColorGraph& g) { return g.distances(); }

/// Number of colors at each distance from any vertex, shared by all vertices.
struct DistanceProfile {
  std::vector<int> counts;  // counts[i] = d_i, counts[0] = 1
  int diameter = 0;         // largest i with d_i > 0
  int delta = 0;            // out-degree
  int d = 0;                // number of colors

  int reachable() const {
    int total = 0;
    for (int c : counts) total += c;
    return total;
  }
  bool strongly_connected() const { return reachable() == d; }

  friend bool operator==(const DistanceProfile&, const DistanceProfile&) = default;
};

class NotDistanceRegular : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Distance profile of g. Throws NotDistanceRegular unless every vertex has
/// the same out-degree and the same count of vertices at each distance.
inline DistanceProfile profile(const ColorGraph& g) {
  const int d = g.num_colors();
  const auto& dm = g.distances();
  std::vector<int> reference;
  int delta = -1;
  for (int u = 1; u <= d; ++u) {
    std::vector<int> counts;
    for (int v = 1; v <= d; ++v) {
      const int dist = dm(u, v);
      if (dist == kUnreachable) continue;
      if (static_cast<std::size_t>(dist) >= counts.size())
        counts.resize(static_cast<std::size_t>(dist) + 1, 0);
      ++counts[static_cast<std::size_t>(dist)];
    }
    const int deg = static_cast<int>(g.out_neighbors(u).size());
    if (u == 1) {
      reference = std::move(counts);
      delta = deg;
      continue;
    }
    if (deg != delta)
      throw NotDistanceRegular("graph is not regular: color " + std::to_string(u) + " has out-degree " +
                               std::to_string(deg) + ", color 1 has " + std::to_string(delta));
    if (counts != reference)
      throw NotDistanceRegular("graph is not distance-regular: color " + std::to_string(u) +
                               " sees a different distance profile than color 1");
  }
  DistanceProfile p;
  p.counts = std::move(reference);
  p.diameter = static_cast<int>(p.counts.size()) - 1;
  p.delta = delta;
  p.d = d;
  // a delta-regular graph has at most delta^i vertices at distance i
  long long bound = 1;
  for (std::size_t i = 0; i < p.counts.size(); ++i) {
    if (p.counts[i] > bound)
      throw std::logic_error("distance profile violates d_i <= d_1^i at i=" + std::to_string(i));
    bound = std::min<long long>(bound * std::max(delta, 1), std::numeric_limits<int>::max());
  }
  return p;
}

/// Sum of per-coordinate distances from a to b. Order matters for directed g.
inline long long assignment_distance(const ColorGraph& g, const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) throw std::invalid_argument("assignment_distance: length mismatch");
  const int d = g.num_colors();
  long long total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > d || b[i] < 1 || b[i] > d)
      throw std::invalid_argument("assignment_distance: color out of range");
    const int step = g.distance(a[i], b[i]);
    if (step == kUnreachable)
      throw std::domain_error("assignment_distance: coordinate " + std::to_string(i + 1) +
                              " has infinite distance");
    total += step;
  }
  return total;
}

/// Custom graph file: "g <d>" then one "u v" line per directed edge.
inline ColorGraph parse_graph(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  int d = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (detail::is_blank(text) || text == "c" || text.rfind("c ", 0) == 0) continue;
    const auto toks = detail::split_ws(text);
    if (d < 0) {
      if (toks.size() != 2 || toks[0] != "g") throw ParseError(line, "expected header 'g <d>'");
      d = detail::parse_small_int(toks[1], line, "d");
      if (d < 2) throw ParseError(line, "d must be at least 2");
      continue;
    }
    if (toks.size() != 2) throw ParseError(line, "expected edge 'u v'");
    const int u = detail::parse_small_int(toks[0], line, "vertex");
    const int v = detail::parse_small_int(toks[1], line, "vertex");
    if (u < 1 || u > d || v < 1 || v > d) throw ParseError(line, "vertex out of range");
    if (u == v) throw ParseError(line, "self-loop");
    edges.emplace_back(u, v);
  }
  if (d < 0) throw ParseError(line + 1, "missing 'g <d>' header");
  return ColorGraph(d, edges, GraphKind::custom);
}

inline ColorGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

}  // namespace dkcsp

#endif  // DKCSP_COLORGRAPH_HPP
