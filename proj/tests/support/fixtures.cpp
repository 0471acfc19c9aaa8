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


#include "fixtures.hpp"

#include <map>
#include <mutex>
#include <unistd.h>

namespace ivlmap::testing {

BuiltScene build(scenegen::SceneSpec spec) {
  BuiltScene b;
  b.scene = scenegen::make_scene(std::move(spec));
  b.map = scenegen::build_scene_map(b.scene);
  b.occupancy = eval::occupancy_for(b.map, b.settings);
  return b;
}

const BuiltScene& fixture() {
  static const BuiltScene b = build(scenegen::fixture_scene_spec(0.0));
  return b;
}

const BuiltScene& random_built(std::uint64_t seed, double sigma) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, double>, BuiltScene> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({seed, sigma});
  if (it == cache.end())
    it = cache.emplace(std::pair{seed, sigma}, build(scenegen::random_scene_spec(seed, sigma))).first;
  return it->second;
}

std::filesystem::path temp_dir(const std::string& tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("ivlmap_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace ivlmap::testing
