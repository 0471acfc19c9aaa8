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

#include <fstream>

#include "fixtures.hpp"
#include "ivlmap/archive.hpp"
#include "ivlmap/config.hpp"
#include "ivlmap/error.hpp"
#include "ivlmap/io.hpp"

namespace ivlmap {
namespace {

using nlohmann::json;

io::MapArchive fixture_archive() {
  return {testing::fixture().map, {0x1234u, 0x5678u, "test", "surrogate"}};
}

std::string load_error(std::span<const std::uint8_t> bytes) {
  try {
    io::deserialize_archive(bytes, "a.ivlmap");
  } catch (const FormatError& e) {
    return e.what();
  }
  ADD_FAILURE() << "archive accepted";
  return {};
}

TEST(Archive, RoundTripIsExact) {
  const auto a = fixture_archive();
  const auto dir = testing::temp_dir("archive");
  io::save_map(dir / "m.ivlmap", a);
  const auto b = io::load_map(dir / "m.ivlmap");
  EXPECT_TRUE(b == a);
  EXPECT_EQ(b.provenance, a.provenance);
  EXPECT_EQ(b.map.centroids, a.map.centroids);
  // Re-serializing the loaded archive reproduces the file byte for byte.
  EXPECT_EQ(io::serialize_archive(b), io::read_file(dir / "m.ivlmap"));
  EXPECT_EQ(io::serialize_archive(a), io::serialize_archive(a));
}

TEST(Archive, HeaderLayout) {
  const auto bytes = io::serialize_archive(fixture_archive());
  ASSERT_GT(bytes.size(), 28u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "IVLM");
  EXPECT_EQ(bytes[4], io::kArchiveVersion);
  std::uint64_t zsize = 0;
  for (int k = 7; k >= 0; --k) zsize = (zsize << 8) | bytes[std::size_t(8 + k)];
  EXPECT_EQ(zsize, bytes.size() - 28);
  std::uint32_t crc = 0;
  for (int k = 3; k >= 0; --k) crc = (crc << 8) | bytes[std::size_t(16 + k)];
  EXPECT_EQ(crc, io::crc32(std::span(bytes).subspan(28)));
}

TEST(Archive, CorruptionIsDetected) {
  const auto bytes = io::serialize_archive(fixture_archive());
  auto magic = bytes;
  magic[1] = 'X';
  EXPECT_NE(load_error(magic).find("bad magic"), std::string::npos);
  auto version = bytes;
  version[4] = 9;
  EXPECT_NE(load_error(version).find("archive version 9"), std::string::npos);
  for (std::size_t cut : {std::size_t(10), std::size_t(28), bytes.size() / 2, bytes.size() - 1})
    EXPECT_NE(load_error(std::span(bytes).first(cut)).find("checksum failure"), std::string::npos) << cut;
  for (std::size_t at : {std::size_t(28), bytes.size() / 3, bytes.size() - 1}) {
    auto flipped = bytes;
    flipped[at] ^= 0x40;
    EXPECT_NE(load_error(flipped).find("checksum failure"), std::string::npos) << at;
  }
  auto padded = bytes;
  padded.push_back(0);
  EXPECT_THROW(io::deserialize_archive(padded, "p"), FormatError);
  EXPECT_THROW(io::load_map("/nonexistent/m.ivlmap"), FormatError);
}

TEST(Archive, VocabularyTravelsWithTheMap) {
  // The loader does not consult any caller configuration, so a map built
  // with a reordered vocabulary comes back with its own labels.
  auto spec = scenegen::fixture_scene_spec();
  std::swap(spec.colors[0], spec.colors[3]);
  const auto built = testing::build(spec);
  const auto dir = testing::temp_dir("archive_vocab");
  io::save_map(dir / "m.ivlmap", {built.map, {}});
  const auto back = io::load_map(dir / "m.ivlmap");
  EXPECT_EQ(back.map.colors.labels(), spec.colors);
  EXPECT_NE(back.map.colors.labels(), scenegen::default_colors());
  EXPECT_EQ(back.map.color_embeddings.values, built.map.color_embeddings.values);
  for (std::size_t i = 0; i < back.map.records.size(); ++i)
    EXPECT_EQ(back.map.records[i].color, built.map.records[i].color);
}

TEST(Archive, EvaluationMatchesAfterReload) {
  const auto& fx = testing::fixture();
  const auto dir = testing::temp_dir("archive_eval");
  io::save_map(dir / "m.ivlmap", fixture_archive());
  const auto loaded = io::load_map(dir / "m.ivlmap").map;
  const auto occ = eval::occupancy_for(loaded, fx.settings);
  EXPECT_EQ(occ, fx.occupancy);
  const auto tasks = eval::make_tasks(fx.scene, 2, 3);
  std::vector<eval::TaskOutcome> a, b;
  for (const auto& t : tasks) {
    a.push_back(eval::run_task(fx.map, fx.occupancy, t, fx.settings));
    b.push_back(eval::run_task(loaded, occ, t, fx.settings));
  }
  EXPECT_EQ(eval::evaluate(a), eval::evaluate(b));
  for (std::size_t t = 0; t < a.size(); ++t)
    for (std::size_t k = 0; k < eval::kSubgoalsPerTask; ++k)
      EXPECT_EQ(a[t].subgoals[k].stop, b[t].subgoals[k].stop);
}

// ---- config -----------------------------------------------------------------

TEST(Config, DefaultsRoundTripThroughJson) {
  const auto c = io::default_config();
  const auto j = io::config_to_json(c);
  const auto back = io::config_from_json(j);
  EXPECT_EQ(io::config_to_json(back), j);
  EXPECT_EQ(io::config_hash(back), io::config_hash(c));
  EXPECT_EQ(c.thresholds.success_m, 1.0);
  EXPECT_EQ(c.thresholds.reject, 0.3);
  EXPECT_EQ(c.ordering, localization::Ordering::left_to_right);
}

TEST(Config, PartialOverridesAndDerivedSettings) {
  const auto c = io::config_from_json(json::parse(R"({
    "thresholds": {"clearance": 0.4, "min_mask_area": 5},
    "navigation": {"ordering": "nearest"},
    "vocabulary": {"floor_labels": ["floor", "rug"]},
    "translator": {"port": 9000, "timeout_ms": 250}})"));
  EXPECT_EQ(c.nav().clearance_m, 0.4);
  EXPECT_EQ(c.nav().default_ordering, localization::Ordering::nearest);
  EXPECT_EQ(c.fusion().min_mask_area, 5);
  EXPECT_EQ(c.translator.timeout.count(), 250);
  const vocab::Vocabulary v(c.categories, vocab::VocabularyKind::category);
  EXPECT_EQ(c.eval_settings(v).floor_labels, std::set<int>{0});
  EXPECT_NE(io::config_hash(c), io::config_hash(io::default_config()));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  auto message = [](const char* text) {
    try {
      io::config_from_json(json::parse(text));
    } catch (const FormatError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  EXPECT_NE(message(R"({"grdi": {}})").find("unknown key 'grdi'"), std::string::npos);
  EXPECT_NE(message(R"({"thresholds": {"succes": 1}})").find("unknown key 'thresholds.succes'"),
            std::string::npos);
  EXPECT_NE(message(R"({"thresholds": {"reject": 1.5}})").find("out of range"), std::string::npos);
  EXPECT_NE(message(R"({"navigation": {"ordering": "random"}})").find("ordering"), std::string::npos);
  EXPECT_NE(message(R"({"grid": {"cell_size": -1}})"), "accepted");
  EXPECT_NE(message(R"({"grid": {"rows": "many"}})"), "accepted");
  EXPECT_NE(message(R"({"vocabulary": {"colors": []}})"), "accepted");
  EXPECT_NE(message(R"([1, 2])"), "accepted");
}

TEST(Config, LoadFromFile) {
  const auto dir = testing::temp_dir("config");
  std::ofstream(dir / "c.json") << R"({"tasks": {"per_scene": 3}})";
  EXPECT_EQ(io::load_config(dir / "c.json").suite.tasks_per_scene, 3);
  std::ofstream(dir / "bad.json") << "{";
  EXPECT_THROW(io::load_config(dir / "bad.json"), FormatError);
  EXPECT_THROW(io::load_config(dir / "missing.json"), FormatError);
}

}  // namespace
}  // namespace ivlmap
