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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ivlmap/instance.hpp"
#include "ivlmap/localization.hpp"
#include "ivlmap/navigation.hpp"
#include "ivlmap/scenegen.hpp"

namespace ivlmap::eval {

inline constexpr int kSubgoalsPerTask = 4;

struct Subgoal {
  localization::ObjAttr attr;
  int object_id = 0;  // ground-truth object
  CellF target;       // ground-truth centroid
};

struct Task {
  Cell start;
  std::array<Subgoal, kSubgoalsPerTask> subgoals;
};

/// Tasks over distinct instances. A subgoal names its object with ordinal 0
/// when the (category, color) pair is unique and with its left-to-right rank
/// otherwise. Throws Error when the scene has fewer than four objects.
std::vector<Task> make_tasks(const scenegen::Scene& scene, int n_tasks, std::uint64_t seed);

/// Program text executed for one subgoal.
std::string subgoal_program(const localization::ObjAttr& attr);

struct SubgoalOutcome {
  bool success = false;
  std::optional<Cell> stop;
  double distance_m = -1.0;  // stop-to-target distance, -1 without a stop
  std::string error;
};

struct TaskOutcome {
  std::array<SubgoalOutcome, kSubgoalsPerTask> subgoals;
};

struct EvalSettings {
  navigation::NavConfig nav;
  std::set<int> floor_labels{0};
  double inflation_m = 0.15;
};

/// Occupancy used for navigation on a finished map.
mapping::OccupancyGrid occupancy_for(const instance::IvlMap& map, const EvalSettings& settings);

/// Runs the four subgoals in sequence; a failed subgoal does not end the task.
TaskOutcome run_task(const instance::IvlMap& map, const mapping::OccupancyGrid& occupancy,
                     const Task& task, const EvalSettings& settings);

struct Metrics {
  int tasks = 0;
  int subgoals = 0;
  int sn = 0;
  double sr = 0.0;
  std::array<double, kSubgoalsPerTask> t{};  // T_1..T_4

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics evaluate(const std::vector<std::array<bool, kSubgoalsPerTask>>& outcomes);
Metrics evaluate(const std::vector<TaskOutcome>& outcomes);

/// Plain-text table; one header row and one value row.
std::string format_metrics(const Metrics& m);
std::string metrics_json(const Metrics& m);

struct AccuracyReport {
  int objects = 0;
  int label_correct = 0;
  int color_correct = 0;
  double label_accuracy() const { return objects ? double(label_correct) / objects : 0.0; }
  double color_accuracy() const { return objects ? double(color_correct) / objects : 0.0; }
};

/// Each ground-truth object is matched to the record with the largest overlap;
/// unmatched objects count as wrong.
AccuracyReport instance_accuracy(const instance::IvlMap& map, const scenegen::Scene& scene);

/// Fraction of observed room cells whose category label equals ground truth.
double pixel_accuracy(const instance::IvlMap& map, const scenegen::Scene& scene);

}  // namespace ivlmap::eval
