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


#include <benchmark/benchmark.h>

#include "ivlmap/instance.hpp"
#include "ivlmap/mapping.hpp"
#include "ivlmap/planner.hpp"
#include "ivlmap/scenegen.hpp"
#include "ivlmap/vocab.hpp"

namespace {

using namespace ivlmap;

const scenegen::Scene& scene() {
  static const scenegen::Scene s = scenegen::make_scene(scenegen::fixture_scene_spec());
  return s;
}

const instance::IvlMap& built() {
  static const instance::IvlMap m = scenegen::build_scene_map(scene());
  return m;
}

void BM_IntegrateFrame(benchmark::State& state) {
  const auto frame = scenegen::render_frame(scene(), 0);
  const mapping::IntegrationOptions opts{scene().spec.intrinsics, 10.0};
  auto bundle = mapping::init_maps(scene().spec.grid, scene().embed_dim());
  for (auto _ : state) benchmark::DoNotOptimize(mapping::integrate_frame(bundle, frame, opts));
  state.SetItemsProcessed(state.iterations() * frame.depth.rows() * frame.depth.cols());
}
BENCHMARK(BM_IntegrateFrame);

void BM_LabelMap(benchmark::State& state) {
  const auto& map = built();
  for (auto _ : state)
    benchmark::DoNotOptimize(vocab::label_map(map.bundle.embedding, map.category_embeddings));
}
BENCHMARK(BM_LabelMap)->Unit(benchmark::kMillisecond);

void BM_SurrogateSegment(benchmark::State& state) {
  const auto& map = built();
  for (auto _ : state) benchmark::DoNotOptimize(instance::surrogate_segment(map.category_labels, 20));
}
BENCHMARK(BM_SurrogateSegment)->Unit(benchmark::kMillisecond);

// Corner to corner across an open square with a wall that has one gap.
void BM_PlanPath(benchmark::State& state) {
  const int n = int(state.range(0));
  mapping::OccupancyGrid occ(n, n, 1, 0);
  for (int r = 0; r < n; ++r)
    if (r != n - 2) occ(r, n / 2) = 1;
  for (auto _ : state) benchmark::DoNotOptimize(planner::plan_path({0, 0}, {0, n - 1}, occ));
}
BENCHMARK(BM_PlanPath)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
