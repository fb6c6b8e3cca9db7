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

#include "dkcsp/covercode.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <vector>

namespace dkcsp {
namespace {

CoveringCode single_block(const ColorGraph& g, int m, int r, std::vector<Assignment> words) {
  const std::size_t count = words.size();
  return CoveringCode{g, m, r, std::move(words), {m}, {r}, {count}};
}

TEST(GreedyCover, BinaryCubeRadiusOne) {
  const ColorGraph k2 = ColorGraph::complete(2);
  const auto code = greedy_cover(k2, 3, 1);
  // 111 covers its four neighbours, then 222 is the only ball still worth 4
  EXPECT_EQ(code, (std::vector<Assignment>{Assignment({1, 1, 1}), Assignment({2, 2, 2})}));
  EXPECT_LE(code.size(), 4u);
  EXPECT_TRUE(verify_cover(single_block(k2, 3, 1, code)).covered);
}

TEST(GreedyCover, ExtremeRadii) {
  for (const auto& g : {ColorGraph::complete(3), ColorGraph::directed_cycle(3), ColorGraph::hypercube(2)}) {
    const int s = profile(g).diameter;
    EXPECT_EQ(greedy_cover(g, 3, 3 * s).size(), 1u);
    EXPECT_EQ(greedy_cover(g, 3, 3 * s + 4).size(), 1u);
    const auto all = greedy_cover(g, 3, 0);
    EXPECT_EQ(all.size(), static_cast<std::size_t>(g.num_colors() * g.num_colors() * g.num_colors()));
  }
  EXPECT_EQ(greedy_cover(ColorGraph::complete(3), 0, 0), (std::vector<Assignment>{Assignment()}));
}

TEST(GreedyCover, SizeGuaranteeAndCoverage) {
  for (const auto& g : {ColorGraph::complete(2), ColorGraph::complete(3), ColorGraph::directed_cycle(3),
                        ColorGraph::directed_cycle(4), ColorGraph::hypercube(2)}) {
    const DistanceProfile p = profile(g);
    for (int m = 1; m <= 5; ++m) {
      for (int r = 0; r <= p.diameter * m; ++r) {
        const auto code = greedy_cover(g, m, r);
        const auto points = *bounded_power(static_cast<std::uint64_t>(g.num_colors()), m, ~0ULL);
        const BigInt vol = ball_volume(p, m, r);
        EXPECT_LE(static_cast<double>(code.size()), greedy_size_bound(points, vol) + 1e-9);
        EXPECT_GE(BigInt(code.size()) * vol, BigInt(points));
        EXPECT_TRUE(verify_cover(single_block(g, m, r, code)).covered) << g.name() << " m=" << m << " r=" << r;
      }
    }
  }
}

TEST(GreedyCover, Errors) {
  EXPECT_THROW(greedy_cover(ColorGraph::complete(4), 11, 1), std::length_error);
  EXPECT_THROW(greedy_cover(ColorGraph::complete(4), 3, 1, 63), std::length_error);
  const ColorGraph split(4, {{1, 2}, {2, 1}, {3, 4}, {4, 3}});
  EXPECT_THROW(greedy_cover(split, 2, 1), std::invalid_argument);
  const ColorGraph path(3, {{1, 2}, {2, 1}, {2, 3}, {3, 2}});
  EXPECT_THROW(greedy_cover(path, 2, 1), NotDistanceRegular);
}

TEST(ProductCode, Examples) {
  const ColorGraph c3 = ColorGraph::directed_cycle(3);
  const BlockCode full{2, 4, {Assignment({1, 1})}};
  const CoveringCode one = product_code(c3, {full, full});
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.radius, 8);
  EXPECT_EQ(one.n, 4);

  const BlockCode a{1, 1, {Assignment({1}), Assignment({3})}};
  const BlockCode b{1, 0, {Assignment({1}), Assignment({2}), Assignment({3})}};
  const CoveringCode six = product_code(c3, {a, b});
  EXPECT_EQ(six.size(), 6u);
  EXPECT_EQ(six.codewords.front(), Assignment({1, 1}));
  EXPECT_EQ(six.codewords.back(), Assignment({3, 3}));
  EXPECT_EQ(six.radius, 1);
  EXPECT_EQ(six.block_sizes, (std::vector<int>{1, 1}));

  EXPECT_THROW(product_code(c3, {a, BlockCode{1, 0, {}}}), std::invalid_argument);
  const CoveringCode empty = product_code(c3, {});
  EXPECT_EQ(empty.size(), 1u);
  EXPECT_EQ(empty.codewords[0].size(), 0u);
}

TEST(ProductCode, ProductOfCoversCovers) {
  for (const auto& g : {ColorGraph::complete(3), ColorGraph::directed_cycle(3), ColorGraph::hypercube(2)}) {
    const DistanceProfile p = profile(g);
    for (int r1 = 0; r1 <= 2; ++r1)
      for (int r2 = 0; r2 <= 2; ++r2) {
        const BlockCode b1{3, r1, greedy_cover(g, 3, r1)};
        const BlockCode b2{2, r2, greedy_cover(g, 2, r2)};
        const CoveringCode code = product_code(g, {b1, b2});
        EXPECT_EQ(code.size(), b1.codewords.size() * b2.codewords.size());
        EXPECT_TRUE(verify_cover(code).covered);
        EXPECT_GE(BigInt(code.size()) * ball_volume(p, 5, code.radius), pow(BigInt(g.num_colors()), 5));
      }
  }
}

TEST(BlockLayout, FewestBlocks) {
  EXPECT_EQ(block_layout(3, 6, 27), (std::vector<int>{3, 3}));
  EXPECT_EQ(block_layout(3, 7, 27), (std::vector<int>{3, 2, 2}));
  EXPECT_EQ(block_layout(2, 10, 1024), (std::vector<int>{10}));
  EXPECT_EQ(block_layout(2, 10, 1023), (std::vector<int>{5, 5}));
  EXPECT_TRUE(block_layout(3, 0, 27).empty());
  EXPECT_THROW(block_layout(5, 3, 4), std::length_error);
}

TEST(BuildCode, Examples) {
  const ColorGraph k2 = ColorGraph::complete(2);
  const CoveringCode c = build_code(k2, 3, 3, 8);
  // x = 1/3, T(3, .) = 1 3 3 1: scores 1, 1, 1/3, 1/27 -> r = 0 (tie to smaller)
  EXPECT_EQ(c.block_sizes, (std::vector<int>{3}));
  EXPECT_EQ(c.radius, select_radius(profile(k2), 3, Rational(1, 3)));
  EXPECT_TRUE(verify_cover(c).covered);

  const CoveringCode empty = build_code(ColorGraph::directed_cycle(3), 0, 3);
  EXPECT_EQ(empty.size(), 1u);
  EXPECT_EQ(empty.radius, 0);
  EXPECT_EQ(empty.codewords[0].size(), 0u);

  const ColorGraph c3 = ColorGraph::directed_cycle(3);
  const CoveringCode two = build_code(c3, 6, 3, 27);
  EXPECT_EQ(two.block_sizes, (std::vector<int>{3, 3}));
  const int r_block = select_radius(profile(c3), 3, Rational(1, 3));
  EXPECT_EQ(two.block_radii, (std::vector<int>{r_block, r_block}));
  EXPECT_EQ(two.radius, 2 * r_block);
  ASSERT_EQ(two.block_counts.size(), 2u);
  EXPECT_EQ(two.block_counts[0] * two.block_counts[1], two.size());
  EXPECT_TRUE(verify_cover(two).covered);
}

TEST(BuildCode, CoversAndRespectsVolumeBound) {
  for (const auto& g : {ColorGraph::complete(3), ColorGraph::directed_cycle(3), ColorGraph::directed_cycle(4),
                        ColorGraph::hypercube(2)}) {
    const DistanceProfile p = profile(g);
    for (int n = 1; n <= 6; ++n)
      for (int k = 2; k <= 3; ++k)
        for (std::uint64_t cap : {std::uint64_t{64}, kDefaultBlockCap}) {
          const CoveringCode code = build_code(g, n, k, cap);
          EXPECT_TRUE(verify_cover(code).covered);
          EXPECT_GE(BigInt(code.size()) * ball_volume(p, n, code.radius), pow(BigInt(g.num_colors()), n));
        }
  }
}

TEST(BuildCode, Deterministic) {
  const ColorGraph c4 = ColorGraph::directed_cycle(4);
  const CoveringCode a = build_code(c4, 7, 3, 256);
  const CoveringCode b = build_code(c4, 7, 3, 256);
  EXPECT_EQ(a.codewords, b.codewords);
  EXPECT_EQ(a.radius, b.radius);
}

TEST(VerifyCover, Examples) {
  const ColorGraph k2 = ColorGraph::complete(2);
  EXPECT_TRUE(verify_cover(single_block(k2, 3, 1, {Assignment({1, 1, 1}), Assignment({2, 2, 2})})).covered);

  const CoverReport miss = verify_cover(single_block(k2, 3, 1, {Assignment({1, 1, 1})}));
  EXPECT_FALSE(miss.covered);
  ASSERT_TRUE(miss.uncovered);
  EXPECT_EQ(*miss.uncovered, Assignment({1, 2, 2}));

  const ColorGraph c3 = ColorGraph::directed_cycle(3);
  EXPECT_TRUE(verify_cover(single_block(c3, 3, 6, {Assignment({2, 3, 1})})).covered);
  EXPECT_THROW(verify_cover(single_block(c3, 20, 1, {})), std::length_error);
}

TEST(VerifyCover, DirectionMatters) {
  // from 1 the directed 3-cycle reaches 2 in one step but 3 needs two
  const ColorGraph c3 = ColorGraph::directed_cycle(3);
  const CoverReport rep = verify_cover(single_block(c3, 1, 1, {Assignment({1})}));
  EXPECT_FALSE(rep.covered);
  EXPECT_EQ(*rep.uncovered, Assignment({3}));
  EXPECT_TRUE(verify_cover(single_block(c3, 1, 1, {Assignment({1}), Assignment({3})})).covered);
}

TEST(CodeFile, RoundTrip) {
  const ColorGraph c3 = ColorGraph::directed_cycle(3);
  const CoveringCode code = build_code(c3, 4, 3);
  std::stringstream buf;
  write_code(buf, code);
  const std::string text = buf.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "code 3 4 " + std::to_string(code.radius) + " " + std::to_string(code.size()));
  const CoveringCode back = read_code(buf, c3);
  EXPECT_EQ(back.codewords, code.codewords);
  EXPECT_EQ(back.radius, code.radius);
  EXPECT_TRUE(verify_cover(back).covered);

  std::istringstream bad("code 3 2 1 1\n1 4\n");
  EXPECT_THROW(read_code(bad, c3), ParseError);
}

}  // namespace
}  // namespace dkcsp
