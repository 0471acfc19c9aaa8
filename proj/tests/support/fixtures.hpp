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


// Process-wide cached scenes; building a 500x500 map takes about a second.
#pragma once

#include <filesystem>
#include <string>

#include "ivlmap/eval.hpp"
#include "ivlmap/instance.hpp"
#include "ivlmap/scenegen.hpp"

namespace ivlmap::testing {

struct BuiltScene {
  scenegen::Scene scene;
  instance::IvlMap map;
  mapping::OccupancyGrid occupancy;
  eval::EvalSettings settings;
};

// Noiseless fixture room: four yellow tables, red and black sofas, two chairs,
// a bed and a plant.
const BuiltScene& fixture();

// Random scene for `seed` at noise `sigma`, cached per (seed, sigma).
const BuiltScene& random_built(std::uint64_t seed, double sigma);

BuiltScene build(scenegen::SceneSpec spec);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

}  // namespace ivlmap::testing
