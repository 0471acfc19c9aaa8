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

#include "ivlmap/config.hpp"

#include <algorithm>
#include <initializer_list>

#include "ivlmap/error.hpp"
#include "ivlmap/io.hpp"
#include "ivlmap/scenegen.hpp"

namespace ivlmap::io {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw FormatError("config: '" + where + "' must be an object");
  for (const auto& [k, v] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      throw FormatError("config: unknown key '" + (where.empty() ? k : where + "." + k) + "'");
}

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

instance::FusionOptions RunConfig::fusion() const {
  return {thresholds.reject, thresholds.min_mask_area};
}

navigation::NavConfig RunConfig::nav() const {
  navigation::NavConfig n;
  n.clearance_m = thresholds.clearance_m;
  n.approach_radius_m = thresholds.approach_radius_m;
  n.success_threshold_m = thresholds.success_m;
  n.default_ordering = ordering;
  return n;
}

eval::EvalSettings RunConfig::eval_settings(const vocab::Vocabulary& vocab) const {
  eval::EvalSettings s;
  s.nav = nav();
  s.inflation_m = thresholds.inflation_m;
  s.floor_labels.clear();
  for (const auto& f : floor_labels)
    if (auto i = vocab.find(f)) s.floor_labels.insert(*i);
  return s;
}

RunConfig default_config() {
  RunConfig c;
  c.categories = scenegen::default_categories();
  c.colors = scenegen::default_colors();
  return c;
}

RunConfig config_from_json(const json& j) {
  RunConfig c = default_config();
  try {
    only_keys(j, "", {"grid", "camera", "vocabulary", "thresholds", "navigation", "scenes", "tasks",
                      "translator"});
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      only_keys(g, "grid", {"rows", "cols", "cell_size", "robot_height"});
      take(g, "rows", c.grid.rows);
      take(g, "cols", c.grid.cols);
      take(g, "cell_size", c.grid.cell_size);
      take(g, "robot_height", c.grid.robot_height);
    }
    if (j.contains("camera")) {
      const auto& k = j["camera"];
      only_keys(k, "camera", {"fx", "fy", "cx", "cy", "depth_scale", "max_depth"});
      take(k, "fx", c.camera.fx);
      take(k, "fy", c.camera.fy);
      take(k, "cx", c.camera.cx);
      take(k, "cy", c.camera.cy);
      take(k, "depth_scale", c.camera.depth_scale);
      take(k, "max_depth", c.max_depth_m);
    }
    if (j.contains("vocabulary")) {
      const auto& v = j["vocabulary"];
      only_keys(v, "vocabulary", {"categories", "colors", "floor_labels"});
      take(v, "categories", c.categories);
      take(v, "colors", c.colors);
      take(v, "floor_labels", c.floor_labels);
    }
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      only_keys(t, "thresholds", {"success", "reject", "inflation", "clearance", "approach_radius",
                                  "min_mask_area"});
      take(t, "success", c.thresholds.success_m);
      take(t, "reject", c.thresholds.reject);
      take(t, "inflation", c.thresholds.inflation_m);
      take(t, "clearance", c.thresholds.clearance_m);
      take(t, "approach_radius", c.thresholds.approach_radius_m);
      take(t, "min_mask_area", c.thresholds.min_mask_area);
    }
    if (j.contains("navigation")) {
      const auto& n = j["navigation"];
      only_keys(n, "navigation", {"ordering"});
      if (n.contains("ordering")) {
        const auto o = localization::parse_ordering(n["ordering"].get<std::string>());
        if (!o) throw FormatError("config: navigation.ordering must be nearest or left_to_right");
        c.ordering = *o;
      }
    }
    if (j.contains("scenes")) {
      const auto& s = j["scenes"];
      only_keys(s, "scenes", {"seeds", "noise_sigma"});
      take(s, "seeds", c.suite.seeds);
      take(s, "noise_sigma", c.suite.noise_sigma);
    }
    if (j.contains("tasks")) {
      const auto& t = j["tasks"];
      only_keys(t, "tasks", {"per_scene", "seed"});
      take(t, "per_scene", c.suite.tasks_per_scene);
      take(t, "seed", c.suite.task_seed);
    }
    if (j.contains("translator")) {
      const auto& t = j["translator"];
      only_keys(t, "translator", {"host", "port", "timeout_ms"});
      take(t, "host", c.translator.host);
      take(t, "port", c.translator.port);
      if (t.contains("timeout_ms"))
        c.translator.timeout = std::chrono::milliseconds(t["timeout_ms"].get<long long>());
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  try {
    c.grid.validate();
    c.camera.validate();
    vocab::Vocabulary(c.categories, vocab::VocabularyKind::category);
    vocab::Vocabulary(c.colors, vocab::VocabularyKind::color);
  } catch (const Error& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  const auto& t = c.thresholds;
  if (!(t.success_m > 0) || !(t.reject >= 0 && t.reject <= 1) || !(t.inflation_m >= 0) ||
      !(t.clearance_m >= 0) || !(t.approach_radius_m > 0) || t.min_mask_area < 1)
    throw FormatError("config: thresholds out of range");
  if (c.suite.tasks_per_scene < 0 || !(c.suite.noise_sigma >= 0))
    throw FormatError("config: scenes/tasks values out of range");
  return c;
}

json config_to_json(const RunConfig& c) {
  return {{"grid",
           {{"rows", c.grid.rows},
            {"cols", c.grid.cols},
            {"cell_size", c.grid.cell_size},
            {"robot_height", c.grid.robot_height}}},
          {"camera",
           {{"fx", c.camera.fx},
            {"fy", c.camera.fy},
            {"cx", c.camera.cx},
            {"cy", c.camera.cy},
            {"depth_scale", c.camera.depth_scale},
            {"max_depth", c.max_depth_m}}},
          {"vocabulary",
           {{"categories", c.categories}, {"colors", c.colors}, {"floor_labels", c.floor_labels}}},
          {"thresholds",
           {{"success", c.thresholds.success_m},
            {"reject", c.thresholds.reject},
            {"inflation", c.thresholds.inflation_m},
            {"clearance", c.thresholds.clearance_m},
            {"approach_radius", c.thresholds.approach_radius_m},
            {"min_mask_area", c.thresholds.min_mask_area}}},
          {"navigation", {{"ordering", std::string(localization::to_string(c.ordering))}}},
          {"scenes", {{"seeds", c.suite.seeds}, {"noise_sigma", c.suite.noise_sigma}}},
          {"tasks", {{"per_scene", c.suite.tasks_per_scene}, {"seed", c.suite.task_seed}}},
          {"translator",
           {{"host", c.translator.host},
            {"port", c.translator.port},
            {"timeout_ms", c.translator.timeout.count()}}}};
}

RunConfig load_config(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return config_from_json(json::parse(bytes.begin(), bytes.end()));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": invalid JSON: " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::uint32_t config_hash(const RunConfig& c) {
  const std::string s = config_to_json(c).dump();
  return crc32(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

}  // namespace ivlmap::io
