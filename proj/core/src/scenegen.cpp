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

#include "ivlmap/scenegen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ivlmap/error.hpp"

namespace ivlmap::scenegen {

namespace {

constexpr double kInset = 0.002;  // boxes sit this far inside their cell borders

struct Box {
  double x0, x1, z0, z1, h;
};

Box box_of(const ObjectSpec& o, const geometry::GridSpec& g) {
  const double s = g.cell_size;
  const double hr = g.rows / 2.0;
  const double hc = g.cols / 2.0;
  return {(o.min.px - hr - 0.5) * s + kInset, (o.max.px - hr + 0.5) * s - kInset,
          (hc - o.max.py - 0.5) * s + kInset, (hc - o.min.py + 0.5) * s - kInset, o.height_m};
}

std::array<std::uint8_t, 3> color_rgb(const std::string& name) {
  static const std::vector<std::pair<std::string, std::array<std::uint8_t, 3>>> table = {
      {"white", {235, 235, 235}}, {"black", {20, 20, 20}},   {"red", {200, 30, 30}},
      {"yellow", {230, 210, 40}}, {"blue", {40, 60, 200}},   {"green", {40, 160, 60}},
      {"brown", {120, 80, 40}},   {"gray", {128, 128, 128}}, {"orange", {240, 140, 30}},
      {"purple", {120, 50, 160}}, {"pink", {240, 150, 190}}};
  for (const auto& [n, rgb] : table)
    if (n == name) return rgb;
  std::uint32_t h = 2166136261u;
  for (char c : name) h = (h ^ std::uint8_t(c)) * 16777619u;
  return {std::uint8_t(h), std::uint8_t(h >> 8), std::uint8_t(h >> 16)};
}

/// Entry distance of the ray into the box, if any.
std::optional<double> hit_box(const geometry::Vec3& o, const geometry::Vec3& d, const Box& b) {
  double tmin = 0.0;
  double tmax = std::numeric_limits<double>::infinity();
  const std::array<double, 3> lo{b.x0, 0.0, b.z0};
  const std::array<double, 3> hi{b.x1, b.h, b.z1};
  for (int k = 0; k < 3; ++k) {
    if (d[k] == 0.0) {
      if (o[k] < lo[std::size_t(k)] || o[k] > hi[std::size_t(k)]) return std::nullopt;
      continue;
    }
    double t0 = (lo[std::size_t(k)] - o[k]) / d[k];
    double t1 = (hi[std::size_t(k)] - o[k]) / d[k];
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return std::nullopt;
  }
  return tmin;
}

ObjectSpec place(const std::string& cat, const std::string& color, double cx, double cz,
                 double wx, double wz, double h, const geometry::GridSpec& g) {
  const double s = g.cell_size;
  ObjectSpec o;
  o.category = cat;
  o.color = color;
  o.height_m = h;
  o.min.px = int(std::lround((cx - wx / 2) / s + g.rows / 2.0 + 0.5));
  o.max.px = o.min.px + int(std::lround(wx / s)) - 1;
  o.min.py = int(std::lround(g.cols / 2.0 + 0.5 - (cz + wz / 2) / s));
  o.max.py = o.min.py + int(std::lround(wz / s)) - 1;
  return o;
}

double rect_gap(const Box& a, const Box& b) {
  const double gx = std::max({0.0, b.x0 - a.x1, a.x0 - b.x1});
  const double gz = std::max({0.0, b.z0 - a.z1, a.z0 - b.z1});
  return std::hypot(gx, gz);
}

}  // namespace

std::vector<std::string> default_categories() {
  return {"floor", "table", "chair", "sofa", "bed", "cabinet", "plant", "toilet", "sink", "kitchen"};
}

std::vector<std::string> default_colors() {
  return {"white", "black", "red", "yellow", "blue", "green", "brown", "gray"};
}

std::vector<CameraFrame> standard_camera_path(double room_extent_m) {
  std::vector<CameraFrame> path;
  constexpr int n = 7;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -room_extent_m / 2 + room_extent_m * (i + 0.5) / n;
      const double z = -room_extent_m / 2 + room_extent_m * (j + 0.5) / n;
      path.push_back({x, z, (i * n + j) % 2 == 0 ? 0.0 : 90.0});
    }
  path.push_back({0.0, 0.0, 45.0});
  return path;
}

void SceneSpec::validate() const {
  grid.validate();
  intrinsics.validate();
  if (image_rows < 1 || image_cols < 1) throw Error("scene: image size must be positive");
  if (!(room_extent_m > 0)) throw Error("scene: room extent must be positive");
  if (!(noise_sigma >= 0) || !std::isfinite(noise_sigma))
    throw Error("scene: noise_sigma must be finite and non-negative");
  if (path.empty()) throw Error("scene: camera path is empty");
  const vocab::Vocabulary cats(categories, vocab::VocabularyKind::category);
  const vocab::Vocabulary cols(colors, vocab::VocabularyKind::color);
  if (!cols.find(floor_color)) throw Error("scene: floor color '" + floor_color + "' not in colors");
  const double half = room_extent_m / 2;
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    const std::string tag = "scene: object " + std::to_string(i + 1) + " (" + o.category + ")";
    const auto ci = cats.find(o.category);
    if (!ci || *ci == 0) throw Error(tag + ": category not in vocabulary or is the floor label");
    if (!cols.find(o.color)) throw Error(tag + ": color '" + o.color + "' not in vocabulary");
    if (o.min.px > o.max.px || o.min.py > o.max.py) throw Error(tag + ": empty rectangle");
    if (!(o.height_m > 0) || o.height_m >= camera_height_m)
      throw Error(tag + ": height must be in (0, camera height)");
    const Box b = box_of(o, grid);
    if (b.x0 < -half || b.x1 > half || b.z0 < -half || b.z1 > half)
      throw Error(tag + ": outside the room");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& p = objects[j];
      if (o.min.px <= p.max.px && p.min.px <= o.max.px && o.min.py <= p.max.py &&
          p.min.py <= o.max.py)
        throw Error(tag + ": overlaps object " + std::to_string(j + 1));
    }
    boxes.push_back(b);
  }
}

SceneSpec random_scene_spec(std::uint64_t seed, double noise_sigma,
                            const RandomSceneOptions& options) {
  struct Shape {
    const char* category;
    double wx, wz, h;
  };
  static const std::array<Shape, 6> shapes = {{{"table", 1.2, 0.8, 0.75},
                                               {"chair", 0.5, 0.5, 0.9},
                                               {"sofa", 2.0, 0.9, 0.8},
                                               {"bed", 1.8, 1.2, 0.6},
                                               {"cabinet", 1.0, 0.5, 1.2},
                                               {"plant", 0.4, 0.4, 1.0}}};
  SceneSpec spec;
  spec.seed = seed;
  spec.noise_sigma = noise_sigma;
  spec.categories = default_categories();
  spec.colors = default_colors();
  spec.path = standard_camera_path(spec.room_extent_m);

  std::mt19937_64 rng(seed);
  // A small palette per scene so (category, color) groups repeat.
  std::vector<std::string> palette(spec.colors.begin(), spec.colors.end() - 1);
  std::shuffle(palette.begin(), palette.end(), rng);
  palette.resize(3);

  const int target = std::uniform_int_distribution<int>(options.min_objects, options.max_objects)(rng);
  const double half = spec.room_extent_m / 2 - options.wall_margin_m;
  std::vector<Box> boxes;
  for (int attempt = 0; attempt < 4000 && int(spec.objects.size()) < target; ++attempt) {
    const Shape& sh = shapes[std::uniform_int_distribution<std::size_t>(0, shapes.size() - 1)(rng)];
    const bool rotate = std::bernoulli_distribution(0.5)(rng);
    const double wx = rotate ? sh.wz : sh.wx;
    const double wz = rotate ? sh.wx : sh.wz;
    const double cx = std::uniform_real_distribution<double>(-half + wx / 2, half - wx / 2)(rng);
    const double cz = std::uniform_real_distribution<double>(-half + wz / 2, half - wz / 2)(rng);
    const std::string color = palette[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];
    ObjectSpec o = place(sh.category, color, cx, cz, wx, wz, sh.h, spec.grid);
    const Box b = box_of(o, spec.grid);
    if (b.x0 < -half || b.x1 > half || b.z0 < -half || b.z1 > half) continue;
    bool ok = true;
    for (std::size_t j = 0; j < boxes.size() && ok; ++j) {
      ok = rect_gap(b, boxes[j]) >= options.min_gap_m;
      const auto& p = spec.objects[j];
      if (ok && p.category == o.category) ok = p.min.py + p.max.py != o.min.py + o.max.py;
    }
    if (!ok) continue;
    boxes.push_back(b);
    spec.objects.push_back(std::move(o));
  }
  return spec;
}

SceneSpec fixture_scene_spec(double noise_sigma) {
  SceneSpec spec;
  spec.seed = 7;
  spec.noise_sigma = noise_sigma;
  spec.categories = default_categories();
  spec.colors = default_colors();
  spec.path = standard_camera_path(spec.room_extent_m);
  const auto& g = spec.grid;
  for (double z : {3.0, 1.0, -1.0, -3.0})
    spec.objects.push_back(place("table", "yellow", -3.0, z, 1.2, 0.8, 0.75, g));
  spec.objects.push_back(place("sofa", "red", 1.0, 2.5, 0.9, 2.0, 0.8, g));
  spec.objects.push_back(place("sofa", "black", 1.0, -2.5, 0.9, 2.0, 0.8, g));
  spec.objects.push_back(place("chair", "black", 3.5, 0.0, 0.5, 0.5, 0.9, g));
  spec.objects.push_back(place("chair", "blue", -0.8, 0.0, 0.5, 0.5, 0.9, g));
  spec.objects.push_back(place("bed", "white", 3.5, 3.0, 1.2, 1.8, 0.6, g));
  spec.objects.push_back(place("plant", "green", 3.8, -3.5, 0.4, 0.4, 1.0, g));
  return spec;
}

bool Scene::in_room(Cell c) const {
  const auto xz = geometry::cell_center_xz(c, spec.grid);
  const double half = spec.room_extent_m / 2;
  return std::abs(xz.x()) <= half && std::abs(xz.y()) <= half;
}

Scene make_scene(SceneSpec spec) {
  spec.validate();
  Scene scene;
  scene.categories = vocab::Vocabulary(spec.categories, vocab::VocabularyKind::category);
  scene.colors = vocab::Vocabulary(spec.colors, vocab::VocabularyKind::color);
  const int nc = scene.categories.size();
  const int nk = scene.colors.size();
  const int dim = nc + nk;
  std::vector<float> ec(std::size_t(nc) * std::size_t(dim), 0.0f);
  for (int k = 0; k < nc; ++k) ec[std::size_t(k) * std::size_t(dim) + std::size_t(k)] = 1.0f;
  std::vector<float> ek(std::size_t(nk) * std::size_t(dim), 0.0f);
  for (int k = 0; k < nk; ++k) ek[std::size_t(k) * std::size_t(dim) + std::size_t(nc + k)] = 1.0f;
  scene.category_embeddings = vocab::load_label_embeddings(scene.categories, nc, dim, ec);
  scene.color_embeddings = vocab::load_label_embeddings(scene.colors, nk, dim, ek);

  const auto& g = spec.grid;
  scene.instance_raster = LabelGrid(g.rows, g.cols, 1, 0);
  scene.category_raster = LabelGrid(g.rows, g.cols, 1, 0);
  scene.color_raster = LabelGrid(g.rows, g.cols, 1, *scene.colors.find(spec.floor_color));
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    const auto& o = spec.objects[i];
    GroundTruthObject gt;
    gt.id = int(i) + 1;
    gt.category = o.category;
    gt.color = o.color;
    gt.category_index = *scene.categories.find(o.category);
    gt.color_index = *scene.colors.find(o.color);
    gt.min = o.min;
    gt.max = o.max;
    gt.centroid = {(o.min.px + o.max.px) / 2.0, (o.min.py + o.max.py) / 2.0};
    for (int r = std::max(0, o.min.px); r <= std::min(g.rows - 1, o.max.px); ++r)
      for (int c = std::max(0, o.min.py); c <= std::min(g.cols - 1, o.max.py); ++c) {
        scene.instance_raster(r, c) = gt.id;
        scene.category_raster(r, c) = gt.category_index;
        scene.color_raster(r, c) = gt.color_index;
      }
    scene.objects.push_back(std::move(gt));
  }
  scene.spec = std::move(spec);
  return scene;
}

geometry::Pose camera_pose(const CameraFrame& frame, double height_m) {
  const double yaw = frame.yaw_deg * std::numbers::pi / 180.0;
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  geometry::Pose pose;
  pose.rotation << c, -s, 0.0,  //
      0.0, 0.0, -1.0,           //
      s, c, 0.0;
  pose.translation = {frame.x, height_m, frame.z};
  return pose;
}

mapping::FrameInput render_frame(const Scene& scene, std::size_t index) {
  const auto& spec = scene.spec;
  if (index >= spec.path.size()) throw Error("render_frame: frame index out of range");
  const int rows = spec.image_rows;
  const int cols = spec.image_cols;
  const int nc = scene.categories.size();
  const int dim = scene.embed_dim();
  mapping::FrameInput f;
  f.pose = camera_pose(spec.path[index], spec.camera_height_m);
  f.rgb = Grid<std::uint8_t>(rows, cols, 3, 0);
  f.depth = Grid<std::uint16_t>(rows, cols, 1, 0);
  f.embedding = Grid<float>(rows, cols, dim, 0.0f);

  std::vector<Box> boxes;
  for (const auto& o : spec.objects) boxes.push_back(box_of(o, spec.grid));
  const int floor_color = *scene.colors.find(spec.floor_color);
  const double half = spec.room_extent_m / 2;
  const auto& in = spec.intrinsics;

  std::seed_seq seq{std::uint32_t(spec.seed), std::uint32_t(spec.seed >> 32),
                    std::uint32_t(index), std::uint32_t(0x5ce9e)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(dim));

  const geometry::Vec3 origin = f.pose.translation;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const geometry::Vec3 ray_cam((c - in.cx) / in.fx, (r - in.cy) / in.fy, 1.0);
      const geometry::Vec3 d = f.pose.rotation * ray_cam;
      double t = std::numeric_limits<double>::infinity();
      int cat = -1;
      int col = -1;
      for (std::size_t k = 0; k < boxes.size(); ++k)
        if (auto hit = hit_box(origin, d, boxes[k]); hit && *hit < t) {
          t = *hit;
          cat = *scene.categories.find(spec.objects[k].category);
          col = *scene.colors.find(spec.objects[k].color);
        }
      if (cat < 0 && d.y() < 0) {
        const double tf = origin.y() / -d.y();
        const geometry::Vec3 p = origin + tf * d;
        if (std::abs(p.x()) <= half && std::abs(p.z()) <= half) {
          t = tf;
          cat = 0;
          col = floor_color;
        }
      }
      if (cat < 0) continue;
      const double raw = std::round(t / in.depth_scale);
      if (raw < 1 || raw > 65535) continue;
      f.depth(r, c) = std::uint16_t(raw);
      const auto rgb = color_rgb(scene.colors.at(col));
      for (int ch = 0; ch < 3; ++ch) f.rgb(r, c, ch) = rgb[std::size_t(ch)];
      std::fill(v.begin(), v.end(), 0.0);
      v[std::size_t(cat)] = std::numbers::sqrt2 / 2;
      v[std::size_t(nc + col)] = std::numbers::sqrt2 / 2;
      if (spec.noise_sigma > 0)
        for (auto& x : v) x += spec.noise_sigma * noise(rng);
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm == 0.0) continue;
      for (int ch = 0; ch < dim; ++ch) f.embedding(r, c, ch) = float(v[std::size_t(ch)] / norm);
    }
  return f;
}

instance::IvlMap build_scene_map(const Scene& scene, const instance::FusionOptions& fusion,
                                 double max_depth_m) {
  auto bundle = mapping::init_maps(scene.spec.grid, scene.embed_dim());
  mapping::IntegrationOptions opts{scene.spec.intrinsics, max_depth_m};
  for (std::size_t i = 0; i < scene.spec.path.size(); ++i)
    mapping::integrate_frame(bundle, render_frame(scene, i), opts);
  auto inputs = instance::make_inputs(std::move(bundle), scene.categories, scene.colors,
                                      scene.category_embeddings, scene.color_embeddings);
  const auto masks = instance::surrogate_segment(inputs.category_labels, fusion.min_mask_area);
  return instance::build_ivlmap(std::move(inputs), masks, fusion);
}

}  // namespace ivlmap::scenegen
