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

#include "ivlmap/io.hpp"

#include <zlib.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bytes.hpp"
#include "ivlmap/error.hpp"

namespace ivlmap::io {

using nlohmann::json;

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw FormatError("read failed: " + path.string());
  return data;
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw FormatError("write failed: " + path.string());
}

std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t seed) {
  uLong crc = seed;
  std::size_t off = 0;
  while (off < bytes.size()) {
    const auto n = std::min<std::size_t>(bytes.size() - off, 1u << 30);
    crc = ::crc32(crc, bytes.data() + off, uInt(n));
    off += n;
  }
  return std::uint32_t(crc);
}

namespace {

std::string read_text(const fs::path& path) {
  const auto b = read_file(path);
  return std::string(b.begin(), b.end());
}

void write_text(const fs::path& path, const std::string& s) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

json parse_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": invalid JSON: " + e.what());
  }
}

// ---- netpbm ----

struct PnmHeader {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::size_t data_offset = 0;
};

PnmHeader parse_pnm_header(const std::vector<std::uint8_t>& b, const fs::path& path) {
  PnmHeader h;
  std::size_t i = 0;
  auto skip_ws = [&]() {
    while (i < b.size()) {
      if (b[i] == '#') {
        while (i < b.size() && b[i] != '\n') ++i;
      } else if (std::isspace(b[i])) {
        ++i;
      } else {
        break;
      }
    }
  };
  auto read_int = [&](const char* what) {
    skip_ws();
    long v = 0;
    std::size_t start = i;
    while (i < b.size() && std::isdigit(b[i]) && v < 1'000'000) v = v * 10 + (b[i++] - '0');
    if (i == start) throw FormatError(path.string() + ": malformed netpbm header (" + what + ")");
    return int(v);
  };
  if (b.size() < 2) throw FormatError(path.string() + ": not a netpbm file");
  h.magic = std::string(b.begin(), b.begin() + 2);
  i = 2;
  h.width = read_int("width");
  h.height = read_int("height");
  h.maxval = read_int("maxval");
  if (i >= b.size() || !std::isspace(b[i]))
    throw FormatError(path.string() + ": malformed netpbm header");
  h.data_offset = i + 1;
  if (h.width < 1 || h.height < 1 || h.maxval < 1 || h.maxval > 65535)
    throw FormatError(path.string() + ": invalid netpbm dimensions");
  return h;
}

void check_dims(const Grid<float>& t, const std::string& ctx) {
  if (t.rows() < 1 || t.cols() < 1 || t.channels() < 1) throw FormatError(ctx + ": empty tensor");
}

json intrinsics_json(const geometry::CameraIntrinsics& k) {
  return {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}, {"depth_scale", k.depth_scale}};
}

geometry::CameraIntrinsics intrinsics_from(const json& j) {
  geometry::CameraIntrinsics k;
  k.fx = j.at("fx").get<double>();
  k.fy = j.at("fy").get<double>();
  k.cx = j.at("cx").get<double>();
  k.cy = j.at("cy").get<double>();
  k.depth_scale = j.value("depth_scale", 0.001);
  return k;
}

json grid_json(const geometry::GridSpec& g) {
  return {{"rows", g.rows}, {"cols", g.cols}, {"cell_size", g.cell_size}, {"robot_height", g.robot_height}};
}

geometry::GridSpec grid_from(const json& j) {
  geometry::GridSpec g;
  g.rows = j.value("rows", g.rows);
  g.cols = j.value("cols", g.cols);
  g.cell_size = j.value("cell_size", g.cell_size);
  g.robot_height = j.value("robot_height", g.robot_height);
  return g;
}

}  // namespace

// ---- tensors ----

std::vector<std::uint8_t> encode_tensor(const Grid<float>& t) {
  detail::ByteWriter w;
  w.text("IVLE");
  w.le<std::uint32_t>(kTensorVersion);
  w.le<std::uint32_t>(std::uint32_t(t.rows()));
  w.le<std::uint32_t>(std::uint32_t(t.cols()));
  w.le<std::uint32_t>(std::uint32_t(t.channels()));
  w.le<std::uint32_t>(1);
  w.le_all(t.data());
  return std::move(w.buffer());
}

Grid<float> decode_tensor(std::span<const std::uint8_t> bytes, const std::string& context) {
  detail::ByteReader r(bytes, context);
  const auto magic = r.take(4);
  if (std::string(magic.begin(), magic.end()) != "IVLE")
    throw FormatError(context + ": not an embedding tensor (bad magic)");
  const auto version = r.le<std::uint32_t>();
  if (version != kTensorVersion)
    throw FormatError(context + ": unsupported tensor version " + std::to_string(version));
  const auto rows = r.le<std::uint32_t>();
  const auto cols = r.le<std::uint32_t>();
  const auto ch = r.le<std::uint32_t>();
  const auto dtype = r.le<std::uint32_t>();
  if (dtype != 1) throw FormatError(context + ": unsupported dtype " + std::to_string(dtype));
  if (rows == 0 || cols == 0 || ch == 0 || rows > (1u << 20) || cols > (1u << 20) || ch > (1u << 16))
    throw FormatError(context + ": invalid tensor shape");
  const std::size_t n = std::size_t(rows) * cols * ch;
  if (r.remaining() != n * 4)
    throw FormatError(context + ": payload size " + std::to_string(r.remaining()) +
                      " does not match shape (" + std::to_string(rows) + ", " +
                      std::to_string(cols) + ", " + std::to_string(ch) + ")");
  Grid<float> t(static_cast<int>(rows), static_cast<int>(cols), static_cast<int>(ch));
  r.le_all(t.data(), n);
  return t;
}

void write_tensor(const fs::path& path, const Grid<float>& t) {
  check_dims(t, path.string());
  write_file(path, encode_tensor(t));
}

Grid<float> read_tensor(const fs::path& path) { return decode_tensor(read_file(path), path.string()); }

void write_label_embeddings(const fs::path& path, const vocab::LabelEmbeddings& e) {
  Grid<float> t(e.rows, 1, e.dim);
  t.data() = e.values;
  write_tensor(path, t);
}

vocab::LabelEmbeddings read_label_embeddings(const fs::path& path, const vocab::Vocabulary& v) {
  const auto t = read_tensor(path);
  if (t.cols() != 1)
    throw FormatError(path.string() + ": label embeddings must have shape (N, 1, C)");
  try {
    return vocab::load_label_embeddings(v, t.rows(), t.channels(), t.data());
  } catch (const Error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

// ---- images ----

void write_ppm(const fs::path& path, const Grid<std::uint8_t>& rgb) {
  if (rgb.channels() != 3) throw FormatError(path.string() + ": PPM needs 3 channels");
  detail::ByteWriter w;
  w.text("P6\n" + std::to_string(rgb.cols()) + " " + std::to_string(rgb.rows()) + "\n255\n");
  w.bytes(rgb.data());
  write_file(path, w.buffer());
}

Grid<std::uint8_t> read_ppm(const fs::path& path) {
  const auto b = read_file(path);
  const auto h = parse_pnm_header(b, path);
  if (h.magic != "P6" || h.maxval != 255)
    throw FormatError(path.string() + ": expected an 8-bit binary PPM (P6)");
  const std::size_t n = std::size_t(h.width) * std::size_t(h.height) * 3;
  if (b.size() - h.data_offset < n) throw FormatError(path.string() + ": truncated image data");
  Grid<std::uint8_t> g(h.height, h.width, 3);
  std::copy_n(b.begin() + std::ptrdiff_t(h.data_offset), n, g.data().begin());
  return g;
}

void write_pgm16(const fs::path& path, const Grid<std::uint16_t>& depth) {
  detail::ByteWriter w;
  w.text("P5\n" + std::to_string(depth.cols()) + " " + std::to_string(depth.rows()) + "\n65535\n");
  auto& out = w.buffer();
  out.reserve(out.size() + depth.data().size() * 2);
  for (auto v : depth.data()) {
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v & 0xff));
  }
  write_file(path, out);
}

Grid<std::uint16_t> read_pgm16(const fs::path& path) {
  const auto b = read_file(path);
  const auto h = parse_pnm_header(b, path);
  if (h.magic != "P5" || h.maxval < 256)
    throw FormatError(path.string() + ": expected a 16-bit binary PGM (P5)");
  const std::size_t n = std::size_t(h.width) * std::size_t(h.height);
  if (b.size() - h.data_offset < 2 * n) throw FormatError(path.string() + ": truncated image data");
  Grid<std::uint16_t> g(h.height, h.width, 1);
  const std::uint8_t* p = b.data() + h.data_offset;
  for (std::size_t i = 0; i < n; ++i) g.data()[i] = std::uint16_t((p[2 * i] << 8) | p[2 * i + 1]);
  return g;
}

// ---- poses ----

std::string format_pose(const geometry::Pose& pose) {
  std::string out;
  char buf[32];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      const double v = c < 3 ? pose.rotation(r, c) : pose.translation(r);
      std::snprintf(buf, sizeof buf, "%.17g", v);
      if (!out.empty()) out += ' ';
      out += buf;
    }
  return out;
}

geometry::Pose parse_pose(const std::string& line, const std::string& context) {
  std::istringstream is(line);
  std::vector<double> v;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw FormatError(context + ": malformed number '" + tok + "'");
    }
  }
  if (v.size() != 12)
    throw FormatError(context + ": expected 12 numbers, found " + std::to_string(v.size()));
  geometry::Pose p;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) p.rotation(r, c) = v[std::size_t(r * 4 + c)];
    p.translation(r) = v[std::size_t(r * 4 + 3)];
  }
  for (double x : v)
    if (!std::isfinite(x)) throw FormatError(context + ": non-finite pose entry");
  return p;
}

std::vector<geometry::Pose> read_poses(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<geometry::Pose> poses;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    poses.push_back(parse_pose(line, path.string() + ":" + std::to_string(n)));
  }
  return poses;
}

void write_poses(const fs::path& path, const std::vector<geometry::Pose>& poses) {
  std::string out;
  for (const auto& p : poses) out += format_pose(p) + "\n";
  write_text(path, out);
}

// ---- masks ----

json rle_encode(const BinaryMask& mask) {
  std::vector<std::uint64_t> counts;
  std::uint8_t cur = 0;
  std::uint64_t run = 0;
  for (int c = 0; c < mask.cols(); ++c)
    for (int r = 0; r < mask.rows(); ++r) {
      const std::uint8_t v = mask(r, c) ? 1 : 0;
      if (v != cur) {
        counts.push_back(run);
        run = 0;
        cur = v;
      }
      ++run;
    }
  counts.push_back(run);
  return {{"size", {mask.rows(), mask.cols()}}, {"counts", counts}};
}

BinaryMask rle_decode(const json& rle) {
  try {
    const int h = rle.at("size").at(0).get<int>();
    const int w = rle.at("size").at(1).get<int>();
    if (h < 1 || w < 1) throw FormatError("RLE: invalid size");
    if (!rle.at("counts").is_array())
      throw FormatError("RLE: counts must be an uncompressed integer array");
    BinaryMask m(h, w, 1, 0);
    const std::uint64_t total = std::uint64_t(h) * std::uint64_t(w);
    std::uint64_t pos = 0;
    std::uint8_t v = 0;
    for (const auto& cnt : rle.at("counts")) {
      const auto n = cnt.get<std::uint64_t>();
      if (n > total - pos) throw FormatError("RLE: counts exceed mask size");
      for (std::uint64_t k = 0; k < n; ++k, ++pos)
        if (v) m(int(pos % std::uint64_t(h)), int(pos / std::uint64_t(h))) = 1;
      v ^= 1;
    }
    if (pos != total) throw FormatError("RLE: counts sum to " + std::to_string(pos) +
                                        ", expected " + std::to_string(total));
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("RLE: ") + e.what());
  }
}

json record_to_json(const instance::MaskRecord& r) {
  json pc = json::array();
  for (const auto& p : r.point_coords) pc.push_back({p[0], p[1]});
  return {{"segmentation", rle_encode(r.segmentation)},
          {"area", r.area},
          {"bbox", r.bbox},
          {"predicted_iou", r.predicted_iou},
          {"point_coords", pc},
          {"stability_score", r.stability_score},
          {"crop_box", r.crop_box},
          {"label", r.label},
          {"label_id", r.label_id},
          {"num_of_same_class", r.num_of_same_class},
          {"color", r.color},
          {"score", r.score},
          {"color_score", r.color_score}};
}

instance::MaskRecord record_from_json(const json& j) {
  try {
    instance::MaskRecord r;
    r.segmentation = rle_decode(j.at("segmentation"));
    r.area = mask_area(r.segmentation);
    if (r.area == 0) throw FormatError("mask record: empty segmentation");
    if (j.contains("area") && j["area"].get<std::size_t>() != r.area)
      throw FormatError("mask record: area " + j["area"].dump() +
                        " disagrees with segmentation area " + std::to_string(r.area));
    r.bbox = j.contains("bbox") ? j["bbox"].get<std::array<int, 4>>()
                                : instance::mask_bbox(r.segmentation);
    r.predicted_iou = j.value("predicted_iou", 1.0);
    r.stability_score = j.value("stability_score", 1.0);
    if (j.contains("point_coords"))
      for (const auto& p : j["point_coords"]) r.point_coords.push_back(p.get<std::array<double, 2>>());
    r.crop_box = j.contains("crop_box")
                     ? j["crop_box"].get<std::array<int, 4>>()
                     : std::array<int, 4>{0, 0, r.segmentation.cols(), r.segmentation.rows()};
    r.label = j.value("label", std::string(instance::kUnknownLabel));
    if (r.label.empty()) r.label = instance::kUnknownLabel;
    r.label_id = j.value("label_id", 0);
    r.num_of_same_class = j.value("num_of_same_class", 0);
    r.color = j.value("color", std::string(instance::kUnknownLabel));
    if (r.color.empty()) r.color = instance::kUnknownLabel;
    r.score = j.value("score", 0.0);
    r.color_score = j.value("color_score", 0.0);
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("mask record: ") + e.what());
  }
}

void write_mask_records(const fs::path& path, const std::vector<instance::MaskRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(record_to_json(r));
  write_text(path, arr.dump() + "\n");
}

std::vector<instance::MaskRecord> read_mask_records(const fs::path& path) {
  const json arr = parse_json(path);
  if (!arr.is_array()) throw FormatError(path.string() + ": expected a JSON array of mask records");
  std::vector<instance::MaskRecord> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    try {
      out.push_back(record_from_json(arr[i]));
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ": record " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

instance::MaskSet masks_from_records(const std::vector<instance::MaskRecord>& records, int rows,
                                     int cols) {
  instance::MaskSet set;
  set.provenance = instance::MaskProvenance::external_file;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!r.segmentation.same_shape(rows, cols))
      throw FormatError("mask " + std::to_string(i) + ": size " +
                        std::to_string(r.segmentation.rows()) + "x" +
                        std::to_string(r.segmentation.cols()) + " does not match the " +
                        std::to_string(rows) + "x" + std::to_string(cols) + " grid");
    instance::MaskProposal p;
    p.segmentation = r.segmentation;
    p.predicted_iou = r.predicted_iou;
    p.stability_score = r.stability_score;
    p.point_coords = r.point_coords;
    p.crop_box = r.crop_box;
    set.masks.push_back(std::move(p));
  }
  return set;
}

// ---- scene specs ----

json scene_spec_to_json(const scenegen::SceneSpec& s) {
  json objects = json::array();
  for (const auto& o : s.objects)
    objects.push_back({{"category", o.category},
                       {"color", o.color},
                       {"min", {o.min.px, o.min.py}},
                       {"max", {o.max.px, o.max.py}},
                       {"height", o.height_m}});
  json path = json::array();
  for (const auto& f : s.path) path.push_back({{"x", f.x}, {"z", f.z}, {"yaw", f.yaw_deg}});
  return {{"seed", s.seed},
          {"room_extent", s.room_extent_m},
          {"grid", grid_json(s.grid)},
          {"intrinsics", intrinsics_json(s.intrinsics)},
          {"image", {{"rows", s.image_rows}, {"cols", s.image_cols}}},
          {"camera_height", s.camera_height_m},
          {"noise_sigma", s.noise_sigma},
          {"categories", s.categories},
          {"colors", s.colors},
          {"floor_color", s.floor_color},
          {"objects", objects},
          {"path", path}};
}

scenegen::SceneSpec scene_spec_from_json(const json& j) {
  try {
    scenegen::SceneSpec s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.room_extent_m = j.value("room_extent", s.room_extent_m);
    if (j.contains("grid")) s.grid = grid_from(j["grid"]);
    if (j.contains("intrinsics")) s.intrinsics = intrinsics_from(j["intrinsics"]);
    if (j.contains("image")) {
      s.image_rows = j["image"].at("rows").get<int>();
      s.image_cols = j["image"].at("cols").get<int>();
    }
    s.camera_height_m = j.value("camera_height", s.camera_height_m);
    s.noise_sigma = j.value("noise_sigma", 0.0);
    s.categories = j.at("categories").get<std::vector<std::string>>();
    s.colors = j.at("colors").get<std::vector<std::string>>();
    s.floor_color = j.value("floor_color", s.floor_color);
    for (const auto& o : j.at("objects")) {
      scenegen::ObjectSpec os;
      os.category = o.at("category").get<std::string>();
      os.color = o.at("color").get<std::string>();
      os.min = {o.at("min").at(0).get<int>(), o.at("min").at(1).get<int>()};
      os.max = {o.at("max").at(0).get<int>(), o.at("max").at(1).get<int>()};
      os.height_m = o.value("height", os.height_m);
      s.objects.push_back(os);
    }
    for (const auto& f : j.at("path"))
      s.path.push_back({f.at("x").get<double>(), f.at("z").get<double>(), f.value("yaw", 0.0)});
    return s;
  } catch (const json::exception& e) {
    throw FormatError(std::string("scene spec: ") + e.what());
  }
}

// ---- datasets ----

Dataset load_dataset(const fs::path& manifest) {
  Dataset ds;
  ds.manifest = manifest;
  ds.root = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
  const json j = parse_json(manifest);
  const std::string ctx = manifest.string();
  try {
    ds.intrinsics = intrinsics_from(j.at("intrinsics"));
    if (j.contains("grid")) ds.grid = grid_from(j["grid"]);
    ds.categories = j.at("vocabulary").at("categories").get<std::vector<std::string>>();
    ds.colors = j.at("vocabulary").at("colors").get<std::vector<std::string>>();
    ds.category_embeddings = j.at("label_embeddings").at("categories").get<std::string>();
    ds.color_embeddings = j.at("label_embeddings").at("colors").get<std::string>();
    if (j.contains("masks")) ds.masks = j["masks"].get<std::string>();
    if (j.contains("scene")) ds.scene = j["scene"].get<std::string>();
    ds.poses = j.value("poses", ds.poses);
    for (const auto& f : j.at("frames"))
      ds.frames.push_back({f.at("rgb").get<std::string>(), f.at("depth").get<std::string>(),
                           f.at("embedding").get<std::string>()});
  } catch (const json::exception& e) {
    throw FormatError(ctx + ": " + e.what());
  }
  try {
    ds.intrinsics.validate();
    ds.grid.validate();
  } catch (const Error& e) {
    throw FormatError(ctx + ": " + e.what());
  }
  auto require = [&](const std::string& rel) {
    if (!fs::is_regular_file(ds.resolve(rel)))
      throw FormatError(ctx + ": missing file " + ds.resolve(rel).string());
  };
  require(ds.category_embeddings);
  require(ds.color_embeddings);
  require(ds.poses);
  if (ds.masks) require(*ds.masks);
  if (ds.scene) require(*ds.scene);
  for (const auto& f : ds.frames) {
    require(f.rgb);
    require(f.depth);
    require(f.embedding);
  }
  ds.frame_poses = read_poses(ds.resolve(ds.poses));
  if (ds.frame_poses.size() != ds.frames.size())
    throw FormatError(ds.resolve(ds.poses).string() + ": " + std::to_string(ds.frame_poses.size()) +
                      " poses for " + std::to_string(ds.frames.size()) + " frames");
  for (std::size_t i = 0; i < ds.frame_poses.size(); ++i) {
    try {
      ds.frame_poses[i].validate(1e-3);
    } catch (const Error& e) {
      throw FormatError(ds.resolve(ds.poses).string() + ": pose " + std::to_string(i) + ": " + e.what());
    }
  }
  return ds;
}

mapping::FrameInput load_frame(const Dataset& ds, std::size_t i) {
  if (i >= ds.frames.size()) throw FormatError("frame index " + std::to_string(i) + " out of range");
  const auto& f = ds.frames[i];
  mapping::FrameInput in;
  in.rgb = read_ppm(ds.resolve(f.rgb));
  in.depth = read_pgm16(ds.resolve(f.depth));
  in.embedding = read_tensor(ds.resolve(f.embedding));
  in.pose = ds.frame_poses[i];
  if (!in.depth.same_shape(in.rgb))
    throw FormatError(ds.resolve(f.depth).string() + ": depth size " + std::to_string(in.depth.rows()) +
                      "x" + std::to_string(in.depth.cols()) + " differs from " + ds.resolve(f.rgb).string());
  if (!in.embedding.same_shape(in.rgb))
    throw FormatError(ds.resolve(f.embedding).string() + ": embedding size " +
                      std::to_string(in.embedding.rows()) + "x" + std::to_string(in.embedding.cols()) +
                      " differs from " + ds.resolve(f.rgb).string());
  return in;
}

std::uint32_t dataset_hash(const Dataset& ds) {
  std::uint32_t h = crc32(read_file(ds.manifest));
  auto add = [&](const std::string& rel) { h = crc32(read_file(ds.resolve(rel)), h); };
  add(ds.category_embeddings);
  add(ds.color_embeddings);
  add(ds.poses);
  if (ds.masks) add(*ds.masks);
  if (ds.scene) add(*ds.scene);
  for (const auto& f : ds.frames) {
    add(f.rgb);
    add(f.depth);
    add(f.embedding);
  }
  return h;
}

fs::path write_scene_dataset(const fs::path& dir, const scenegen::Scene& scene) {
  fs::create_directories(dir);
  json frames = json::array();
  std::vector<geometry::Pose> poses;
  char name[32];
  for (std::size_t i = 0; i < scene.spec.path.size(); ++i) {
    const auto f = scenegen::render_frame(scene, i);
    std::snprintf(name, sizeof name, "%06zu", i);
    const std::string rgb = std::string("rgb/") + name + ".ppm";
    const std::string depth = std::string("depth/") + name + ".pgm";
    const std::string emb = std::string("embedding/") + name + ".ivle";
    write_ppm(dir / rgb, f.rgb);
    write_pgm16(dir / depth, f.depth);
    write_tensor(dir / emb, f.embedding);
    frames.push_back({{"rgb", rgb}, {"depth", depth}, {"embedding", emb}});
    poses.push_back(f.pose);
  }
  write_poses(dir / "poses.txt", poses);
  write_label_embeddings(dir / "category_embeddings.ivle", scene.category_embeddings);
  write_label_embeddings(dir / "color_embeddings.ivle", scene.color_embeddings);
  write_text(dir / "scene.json", scene_spec_to_json(scene.spec).dump(2) + "\n");
  const json manifest = {
      {"format", "ivlmap-dataset"},
      {"version", 1},
      {"intrinsics", intrinsics_json(scene.spec.intrinsics)},
      {"grid", grid_json(scene.spec.grid)},
      {"vocabulary", {{"categories", scene.spec.categories}, {"colors", scene.spec.colors}}},
      {"label_embeddings",
       {{"categories", "category_embeddings.ivle"}, {"colors", "color_embeddings.ivle"}}},
      {"poses", "poses.txt"},
      {"scene", "scene.json"},
      {"frames", frames}};
  const fs::path path = dir / "manifest.json";
  write_text(path, manifest.dump(2) + "\n");
  return path;
}

}  // namespace ivlmap::io
