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

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "ivlmap/error.hpp"
#include "ivlmap/eval.hpp"
#include "ivlmap/navlang.hpp"
#include "ivlmap/scenegen.hpp"

namespace ivlmap {
namespace {

using eval::evaluate;
using Flags = std::array<bool, eval::kSubgoalsPerTask>;

TEST(SceneSpec, RejectsBadSpecs) {
  auto overlap = scenegen::fixture_scene_spec();
  overlap.objects.push_back(overlap.objects.front());
  EXPECT_THROW(overlap.validate(), Error);

  auto unknown = scenegen::fixture_scene_spec();
  unknown.objects.front().category = "piano";
  EXPECT_THROW(unknown.validate(), Error);

  auto no_path = scenegen::fixture_scene_spec();
  no_path.path.clear();
  EXPECT_THROW(no_path.validate(), Error);

  auto noisy = scenegen::fixture_scene_spec();
  noisy.noise_sigma = -0.1;
  EXPECT_THROW(noisy.validate(), Error);

  EXPECT_NO_THROW(scenegen::fixture_scene_spec().validate());
}

TEST(Scene, RastersMatchObjectBoxes) {
  const auto& scene = testing::fixture().scene;
  ASSERT_EQ(scene.objects.size(), scene.spec.objects.size());
  for (const auto& o : scene.objects) {
    EXPECT_EQ(scene.categories.at(o.category_index), o.category);
    EXPECT_EQ(scene.colors.at(o.color_index), o.color);
    for (int r = o.min.px; r <= o.max.px; ++r)
      for (int c = o.min.py; c <= o.max.py; ++c) {
        ASSERT_EQ(scene.instance_raster(r, c), o.id);
        ASSERT_EQ(scene.category_raster(r, c), o.category_index);
        ASSERT_EQ(scene.color_raster(r, c), o.color_index);
      }
    EXPECT_DOUBLE_EQ(o.centroid.px, (o.min.px + o.max.px) / 2.0);
    EXPECT_DOUBLE_EQ(o.centroid.py, (o.min.py + o.max.py) / 2.0);
  }
  std::size_t object_cells = 0;
  for (auto v : scene.instance_raster.data()) object_cells += v != 0;
  std::size_t box_cells = 0;
  for (const auto& o : scene.objects)
    box_cells += std::size_t(o.max.px - o.min.px + 1) * std::size_t(o.max.py - o.min.py + 1);
  EXPECT_EQ(object_cells, box_cells);
}

TEST(Scene, SameSeedSameFrames) {
  const auto a = scenegen::make_scene(scenegen::random_scene_spec(11, 0.3));
  const auto b = scenegen::make_scene(scenegen::random_scene_spec(11, 0.3));
  EXPECT_EQ(a.spec.objects, b.spec.objects);
  for (std::size_t i : {std::size_t(0), std::size_t(17), a.spec.path.size() - 1}) {
    const auto fa = scenegen::render_frame(a, i);
    const auto fb = scenegen::render_frame(b, i);
    EXPECT_EQ(fa.rgb, fb.rgb);
    EXPECT_EQ(fa.depth, fb.depth);
    EXPECT_EQ(fa.embedding, fb.embedding);
    EXPECT_EQ(fa.pose.rotation, fb.pose.rotation);
    EXPECT_EQ(fa.pose.translation, fb.pose.translation);
    EXPECT_LT(fa.pose.orthonormality_error(), 1e-12);
  }
  const auto c = scenegen::random_scene_spec(12, 0.3);
  EXPECT_NE(c.objects, a.spec.objects);
}

TEST(Scene, RandomSpecsAreValid) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto spec = scenegen::random_scene_spec(seed, 0.0);
    EXPECT_NO_THROW(spec.validate()) << seed;
    EXPECT_GE(spec.objects.size(), 8u);
    EXPECT_LE(spec.objects.size(), 11u);
  }
}

TEST(Scene, NoiselessMapRecoversGroundTruth) {
  const auto& fx = testing::fixture();
  EXPECT_DOUBLE_EQ(eval::pixel_accuracy(fx.map, fx.scene), 1.0);
  const auto acc = eval::instance_accuracy(fx.map, fx.scene);
  EXPECT_EQ(acc.objects, 10);
  EXPECT_EQ(acc.label_correct, 10);
  EXPECT_EQ(acc.color_correct, 10);
}

TEST(Scene, FixtureTablesOrderLeftToRightAsPlaced) {
  const auto& fx = testing::fixture();
  for (int k = 1; k <= 4; ++k) {
    const auto i = localization::select_record({"table", k, "yellow"}, fx.map, {250, 250},
                                               localization::Ordering::left_to_right);
    const auto& gt = fx.scene.objects[std::size_t(k - 1)];
    ASSERT_EQ(gt.category, "table");
    const CellF c = fx.map.centroids[i];
    EXPECT_GE(c.py, gt.min.py);
    EXPECT_LE(c.py, gt.max.py);
    EXPECT_NEAR(c.px, gt.centroid.px, 1.0);
  }
}

// Ordinal of `o` among same-category, same-color objects, recomputed here.
int gt_ordinal(const scenegen::Scene& scene, const scenegen::GroundTruthObject& o) {
  std::vector<std::pair<double, int>> group;
  for (const auto& p : scene.objects)
    if (p.category == o.category && p.color == o.color) group.push_back({p.centroid.py, p.id});
  if (group.size() == 1) return 0;
  std::sort(group.begin(), group.end());
  for (std::size_t k = 0; k < group.size(); ++k)
    if (group[k].second == o.id) return int(k) + 1;
  return -1;
}

TEST(Tasks, WellFormedAndSeeded) {
  const auto& fx = testing::fixture();
  const auto tasks = eval::make_tasks(fx.scene, 10, 5);
  ASSERT_EQ(tasks.size(), 10u);
  EXPECT_EQ(tasks.size() * eval::kSubgoalsPerTask, 40u);
  const auto again = eval::make_tasks(fx.scene, 10, 5);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    EXPECT_EQ(tasks[t].start, again[t].start);
    std::set<int> ids;
    for (std::size_t k = 0; k < eval::kSubgoalsPerTask; ++k) {
      const auto& sg = tasks[t].subgoals[k];
      EXPECT_EQ(sg.attr, again[t].subgoals[k].attr);
      ids.insert(sg.object_id);
      const auto& o = fx.scene.objects[std::size_t(sg.object_id - 1)];
      EXPECT_EQ(sg.attr.name, o.category);
      EXPECT_EQ(sg.attr.color, o.color);
      EXPECT_EQ(sg.attr.instance_idx, gt_ordinal(fx.scene, o));
      EXPECT_EQ(sg.target, o.centroid);
    }
    EXPECT_EQ(ids.size(), 4u);
    EXPECT_TRUE(fx.scene.in_room(tasks[t].start));
    EXPECT_EQ(fx.scene.instance_raster[tasks[t].start], 0);
  }
  EXPECT_NE(eval::make_tasks(fx.scene, 10, 6)[0].start, tasks[0].start);
  EXPECT_TRUE(eval::make_tasks(fx.scene, 0, 5).empty());
  EXPECT_THROW(eval::make_tasks(fx.scene, -1, 5), Error);
}

TEST(Tasks, TooFewObjects) {
  auto spec = scenegen::fixture_scene_spec();
  spec.objects.resize(1);
  const auto scene = scenegen::make_scene(spec);
  EXPECT_THROW(eval::make_tasks(scene, 1, 0), Error);
}

TEST(Tasks, SubgoalProgram) {
  EXPECT_EQ(eval::subgoal_program({"table", 3, "yellow"}),
            "obj = get_obj_attributes(\"table\", 3, \"yellow\")\nmove_to_object(obj)\nstop()\n");
  EXPECT_EQ(eval::subgoal_program({"bed", 0, std::nullopt}),
            "obj = get_obj_attributes(\"bed\", 0, None)\nmove_to_object(obj)\nstop()\n");
}

TEST(RunTask, FixtureTasksSucceed) {
  const auto& fx = testing::fixture();
  const auto tasks = eval::make_tasks(fx.scene, 3, 1);
  std::vector<eval::TaskOutcome> outcomes;
  for (const auto& t : tasks) {
    outcomes.push_back(eval::run_task(fx.map, fx.occupancy, t, fx.settings));
    for (const auto& sg : outcomes.back().subgoals) {
      EXPECT_TRUE(sg.success) << sg.error;
      ASSERT_TRUE(sg.stop);
      EXPECT_LE(sg.distance_m, 1.0);
      EXPECT_TRUE(sg.error.empty());
    }
  }
  const auto m = evaluate(outcomes);
  EXPECT_EQ(m.sn, 12);
  EXPECT_EQ(m.sr, 1.0);
}

TEST(RunTask, UnknownObjectFailsOnlyThatSubgoal) {
  const auto& fx = testing::fixture();
  auto task = eval::make_tasks(fx.scene, 1, 1)[0];
  task.subgoals[1].attr = {"piano", 0, std::nullopt};
  const auto out = eval::run_task(fx.map, fx.occupancy, task, fx.settings);
  EXPECT_TRUE(out.subgoals[0].success);
  EXPECT_FALSE(out.subgoals[1].success);
  EXPECT_FALSE(out.subgoals[1].stop);
  EXPECT_EQ(out.subgoals[1].distance_m, -1.0);
  EXPECT_NE(out.subgoals[1].error.find("piano"), std::string::npos);
  EXPECT_TRUE(out.subgoals[2].success);
  EXPECT_TRUE(out.subgoals[3].success);
}

TEST(Metrics, AllSuccess) {
  const auto m = evaluate(std::vector<Flags>(10, {true, true, true, true}));
  EXPECT_EQ(m.tasks, 10);
  EXPECT_EQ(m.subgoals, 40);
  EXPECT_EQ(m.sn, 40);
  EXPECT_EQ(m.sr, 1.0);
  EXPECT_EQ(m.t, (std::array<double, 4>{1, 1, 1, 1}));
}

TEST(Metrics, ChainBreaksAtFirstFailure) {
  const auto m = evaluate(std::vector<Flags>{{true, true, false, true}, {false, true, true, true}});
  EXPECT_EQ(m.sn, 6);
  EXPECT_DOUBLE_EQ(m.sr, 6.0 / 8.0);
  EXPECT_EQ(m.t, (std::array<double, 4>{0.5, 0.5, 0, 0}));
  EXPECT_EQ(evaluate(std::vector<Flags>{}), eval::Metrics{});
}

TEST(Metrics, RandomOutcomesAgainstCounting) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Flags> flags(std::size_t(rng() % 12));
    for (auto& f : flags)
      for (auto& b : f) b = rng() % 3 != 0;
    const auto m = evaluate(flags);
    int sn = 0;
    std::array<int, 4> chain{};
    for (const auto& f : flags) {
      sn += int(std::count(f.begin(), f.end(), true));
      int run = 0;
      while (run < 4 && f[std::size_t(run)]) ++run;
      for (int k = 0; k < run; ++k) ++chain[std::size_t(k)];
    }
    ASSERT_EQ(m.sn, sn);
    for (int k = 0; k < 4; ++k) {
      ASSERT_EQ(m.t[std::size_t(k)], flags.empty() ? 0.0 : double(chain[std::size_t(k)]) / double(flags.size()));
      if (k) {
        ASSERT_LE(m.t[std::size_t(k)], m.t[std::size_t(k - 1)]);
      }
    }
  }
}

TEST(Metrics, Formatting) {
  const auto m = evaluate(std::vector<Flags>{{true, true, false, true}, {true, true, true, true}});
  EXPECT_EQ(eval::format_metrics(m),
            "tasks  subgoals  SN    SR      T1      T2      T3      T4\n"
            "2      8         7     0.8750  1.0000  1.0000  0.5000  0.5000\n");
  const auto j = eval::metrics_json(m);
  EXPECT_NE(j.find("\"SN\": 7"), std::string::npos) << j;
  EXPECT_NE(j.find("\"SR\": 0.875"), std::string::npos) << j;
  EXPECT_NE(j.find("\"T3\": 0.5"), std::string::npos) << j;
}

}  // namespace
}  // namespace ivlmap
