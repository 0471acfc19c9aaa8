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

#include "ivlmap/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>

#include <nlohmann/json.hpp>

#include "ivlmap/error.hpp"
#include "ivlmap/navlang.hpp"

namespace ivlmap::eval {

namespace {

localization::ObjAttr attr_for(const scenegen::Scene& scene, const scenegen::GroundTruthObject& o) {
  std::vector<const scenegen::GroundTruthObject*> group;
  for (const auto& p : scene.objects)
    if (p.category == o.category && p.color == o.color) group.push_back(&p);
  localization::ObjAttr attr{o.category, 0, o.color};
  if (group.size() > 1) {
    std::sort(group.begin(), group.end(), [](const auto* a, const auto* b) {
      return a->centroid.py != b->centroid.py ? a->centroid.py < b->centroid.py : a->id < b->id;
    });
    attr.instance_idx =
        int(std::find(group.begin(), group.end(), &o) - group.begin()) + 1;
  }
  return attr;
}

bool clear_start(const scenegen::Scene& scene, Cell c, int margin) {
  if (!scene.in_room(c)) return false;
  const auto& g = scene.spec.grid;
  for (int dr = -margin; dr <= margin; ++dr)
    for (int dc = -margin; dc <= margin; ++dc) {
      const Cell n{c.px + dr, c.py + dc};
      if (n.px < 0 || n.py < 0 || n.px >= g.rows || n.py >= g.cols || !scene.in_room(n))
        return false;
      if (scene.instance_raster[n] != 0) return false;
    }
  return true;
}

}  // namespace

std::vector<Task> make_tasks(const scenegen::Scene& scene, int n_tasks, std::uint64_t seed) {
  if (int(scene.objects.size()) < kSubgoalsPerTask)
    throw Error("make_tasks: scene has " + std::to_string(scene.objects.size()) +
                " objects, need at least " + std::to_string(kSubgoalsPerTask));
  if (n_tasks < 0) throw Error("make_tasks: negative task count");
  std::mt19937_64 rng(seed);
  const auto& g = scene.spec.grid;
  const int margin = int(std::ceil(0.5 / g.cell_size));
  std::uniform_int_distribution<int> rows(0, g.rows - 1);
  std::uniform_int_distribution<int> cols(0, g.cols - 1);
  std::vector<Task> tasks;
  for (int t = 0; t < n_tasks; ++t) {
    Task task;
    int attempts = 0;
    do {
      if (++attempts > 100000) throw Error("make_tasks: no clear start cell in the room");
      task.start = {rows(rng), cols(rng)};
    } while (!clear_start(scene, task.start, margin));
    std::vector<std::size_t> order(scene.objects.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int k = 0; k < kSubgoalsPerTask; ++k) {
      const auto& o = scene.objects[order[std::size_t(k)]];
      task.subgoals[std::size_t(k)] = {attr_for(scene, o), o.id, o.centroid};
    }
    tasks.push_back(task);
  }
  return tasks;
}

std::string subgoal_program(const localization::ObjAttr& attr) {
  navlang::AttrTuple t;
  t.attr = attr;
  return navlang::print_program(navlang::visit_program({t}));
}

mapping::OccupancyGrid occupancy_for(const instance::IvlMap& map, const EvalSettings& settings) {
  return mapping::obstacle_grid(map.bundle, settings.floor_labels, map.category_labels,
                                settings.inflation_m);
}

TaskOutcome run_task(const instance::IvlMap& map, const mapping::OccupancyGrid& occupancy,
                     const Task& task, const EvalSettings& settings) {
  TaskOutcome out;
  const double s = map.bundle.grid.cell_size;
  std::optional<navigation::Navigator> nav;
  try {
    const Cell start = localization::approach_cell(task.start, occupancy, s, 2.0);
    nav.emplace(map, occupancy, settings.nav, navigation::AgentState{start, 0.0});
  } catch (const Error& e) {
    for (auto& sg : out.subgoals) sg.error = std::string("start: ") + e.what();
    return out;
  }
  for (int k = 0; k < kSubgoalsPerTask; ++k) {
    const auto& sg = task.subgoals[std::size_t(k)];
    auto& res = out.subgoals[std::size_t(k)];
    const std::size_t from = nav->trajectory().steps.size();
    const auto program = navlang::parse_program(subgoal_program(sg.attr));
    const auto run = navlang::interpret(program, *nav);
    if (run.error) res.error = *run.error;
    res.stop = nav->trajectory().last_stop(from);
    if (res.stop)
      res.distance_m = std::hypot(res.stop->px - sg.target.px, res.stop->py - sg.target.py) * s;
    res.success = navigation::check_success(res.stop, sg.target, s, settings.nav.success_threshold_m);
  }
  return out;
}

Metrics evaluate(const std::vector<std::array<bool, kSubgoalsPerTask>>& outcomes) {
  Metrics m;
  m.tasks = int(outcomes.size());
  m.subgoals = kSubgoalsPerTask * m.tasks;
  std::array<int, kSubgoalsPerTask> prefix{};
  for (const auto& o : outcomes) {
    bool all = true;
    for (int k = 0; k < kSubgoalsPerTask; ++k) {
      m.sn += o[std::size_t(k)] ? 1 : 0;
      all = all && o[std::size_t(k)];
      if (all) ++prefix[std::size_t(k)];
    }
  }
  if (m.tasks > 0) {
    m.sr = double(m.sn) / m.subgoals;
    for (int k = 0; k < kSubgoalsPerTask; ++k)
      m.t[std::size_t(k)] = double(prefix[std::size_t(k)]) / m.tasks;
  }
  return m;
}

Metrics evaluate(const std::vector<TaskOutcome>& outcomes) {
  std::vector<std::array<bool, kSubgoalsPerTask>> flags;
  for (const auto& o : outcomes) {
    std::array<bool, kSubgoalsPerTask> f{};
    for (int k = 0; k < kSubgoalsPerTask; ++k) f[std::size_t(k)] = o.subgoals[std::size_t(k)].success;
    flags.push_back(f);
  }
  return evaluate(flags);
}

std::string format_metrics(const Metrics& m) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "tasks  subgoals  SN    SR      T1      T2      T3      T4\n"
                "%-6d %-9d %-5d %.4f  %.4f  %.4f  %.4f  %.4f\n",
                m.tasks, m.subgoals, m.sn, m.sr, m.t[0], m.t[1], m.t[2], m.t[3]);
  return buf;
}

std::string metrics_json(const Metrics& m) {
  nlohmann::json j = {{"tasks", m.tasks}, {"subgoals", m.subgoals}, {"SN", m.sn},
                      {"SR", m.sr},       {"T1", m.t[0]},          {"T2", m.t[1]},
                      {"T3", m.t[2]},     {"T4", m.t[3]}};
  return j.dump(2);
}

AccuracyReport instance_accuracy(const instance::IvlMap& map, const scenegen::Scene& scene) {
  AccuracyReport rep;
  rep.objects = int(scene.objects.size());
  for (const auto& o : scene.objects) {
    std::optional<std::size_t> best;
    std::size_t best_overlap = 0;
    for (std::size_t i = 0; i < map.records.size(); ++i) {
      std::size_t overlap = 0;
      const auto& seg = map.records[i].segmentation;
      for (int r = o.min.px; r <= o.max.px; ++r)
        for (int c = o.min.py; c <= o.max.py; ++c)
          if (seg.contains({r, c}) && seg(r, c)) ++overlap;
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = i;
      }
    }
    if (!best) continue;
    const auto& rec = map.records[*best];
    if (rec.label == o.category) ++rep.label_correct;
    if (rec.color == o.color) ++rep.color_correct;
  }
  return rep;
}

double pixel_accuracy(const instance::IvlMap& map, const scenegen::Scene& scene) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for_each_cell(map.category_labels.rows(), map.category_labels.cols(), [&](Cell c) {
    if (!map.bundle.observed(c) || !scene.in_room(c)) return;
    ++total;
    if (map.category_labels[c] == scene.category_raster[c]) ++correct;
  });
  return total ? double(correct) / double(total) : 0.0;
}

}  // namespace ivlmap::eval
