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

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ivlmap/eval.hpp"
#include "ivlmap/geometry.hpp"
#include "ivlmap/instance.hpp"
#include "ivlmap/navigation.hpp"
#include "ivlmap/navlang.hpp"
#include "ivlmap/vocab.hpp"

namespace ivlmap::io {

struct Thresholds {
  double success_m = 1.0;
  double reject = 0.3;
  double inflation_m = 0.15;
  double clearance_m = 0.5;
  double approach_radius_m = 2.0;
  int min_mask_area = 20;
};

struct SuiteConfig {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  double noise_sigma = 0.0;
  int tasks_per_scene = 10;
  std::uint64_t task_seed = 0;
};

struct RunConfig {
  geometry::GridSpec grid;
  geometry::CameraIntrinsics camera{70.0, 70.0, 79.5, 59.5, 0.001};
  double max_depth_m = 10.0;
  std::vector<std::string> categories;
  std::vector<std::string> colors;
  std::vector<std::string> floor_labels{"floor"};
  Thresholds thresholds;
  localization::Ordering ordering = localization::Ordering::left_to_right;
  SuiteConfig suite;
  navlang::TranslatorEndpoint translator;

  instance::FusionOptions fusion() const;
  navigation::NavConfig nav() const;
  /// Settings for `vocabulary`; floor labels missing from it are ignored.
  eval::EvalSettings eval_settings(const vocab::Vocabulary& categories) const;
};

RunConfig default_config();
/// Missing sections keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::filesystem::path& path);
/// CRC-32 of the canonical JSON form.
std::uint32_t config_hash(const RunConfig& c);

}  // namespace ivlmap::io
