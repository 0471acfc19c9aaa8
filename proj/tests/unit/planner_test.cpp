// Copyright 2026 The IVLMap Engine Authors
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


#include <gtest/gtest.h>

#include "generators.hpp"
#include "ivlmap/planner.hpp"
#include "oracles.hpp"

namespace ivlmap {
namespace {

using planner::PathCost;

TEST(PlanPath, StartEqualsGoal) {
  mapping::OccupancyGrid occ(5, 5, 1, 0);
  const auto p = planner::plan_path({2, 2}, {2, 2}, occ);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->cells, (std::vector<Cell>{Cell{2, 2}}));
  EXPECT_EQ(p->cost, PathCost{});
}

TEST(PlanPath, EmptyGridDiagonal) {
  mapping::OccupancyGrid occ(10, 10, 1, 0);
  const auto p = planner::plan_path({0, 0}, {9, 9}, occ);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->cost, (PathCost{0, 9}));
  EXPECT_DOUBLE_EQ(p->cost.value(), 9 * std::sqrt(2.0));
  EXPECT_EQ(testing::dijkstra_cost({0, 0}, {9, 9}, occ), p->cost);
}

TEST(PlanPath, WallMakesGoalUnreachable) {
  mapping::OccupancyGrid occ(10, 10, 1, 0);
  for (int r = 0; r < 10; ++r) occ(r, 5) = 1;
  EXPECT_FALSE(planner::plan_path({0, 0}, {0, 9}, occ));
}

TEST(PlanPath, NoCornerCutting) {
  mapping::OccupancyGrid occ(2, 2, 1, 0);
  occ(0, 1) = 1;
  occ(1, 0) = 1;
  EXPECT_FALSE(planner::plan_path({0, 0}, {1, 1}, occ));
}

TEST(PathCost, ExactComparisonOracle) {
  EXPECT_TRUE(testing::cost_less({3, 0}, {0, 3}));
  EXPECT_TRUE(testing::cost_less({0, 2}, {3, 0}));  // 2.83 < 3
  EXPECT_FALSE(testing::cost_less({2, 1}, {2, 1}));
  EXPECT_TRUE(testing::cost_less({7, 0}, {0, 5}));  // 7 < 7.07
  EXPECT_EQ(planner::path_cost({{0, 0}, {1, 1}, {1, 2}}), (PathCost{1, 1}));
}

TEST(PlanPath, MatchesDijkstraOnRandomGrids) {
  testing::Gen gen(2024);
  int reachable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto occ = gen.occupancy(30, 30, gen.real_in(0.0, 0.35));
    const Cell s = gen.free_cell(occ), g = gen.free_cell(occ);
    if (s.px < 0) continue;
    const auto want = testing::dijkstra_cost(s, g, occ);
    const auto got = planner::plan_path(s, g, occ);
    ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << trial;
    if (!got) continue;
    ++reachable;
    ASSERT_EQ(got->cost, *want) << "trial " << trial;
    ASSERT_EQ(got->cells.front(), s);
    ASSERT_EQ(got->cells.back(), g);
    ASSERT_TRUE(testing::valid_path(got->cells, occ));
    ASSERT_EQ(planner::path_cost(got->cells), got->cost);
  }
  EXPECT_GT(reachable, 100);
}

}  // namespace
}  // namespace ivlmap
