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

#include "ivlmap/archive.hpp"

#include <zlib.h>

#include <nlohmann/json.hpp>

#include "bytes.hpp"
#include "ivlmap/error.hpp"
#include "ivlmap/io.hpp"

namespace ivlmap::io {

using nlohmann::json;

namespace {

constexpr std::size_t kHeaderSize = 4 + 4 + 8 + 4 + 8;

json grid_header(const geometry::GridSpec& g) {
  return {{"rows", g.rows}, {"cols", g.cols}, {"cell_size", g.cell_size}, {"robot_height", g.robot_height}};
}

template <typename T>
void read_plane(detail::ByteReader& r, Grid<T>& g, int rows, int cols, int ch) {
  g = Grid<T>(rows, cols, ch);
  r.le_all(g.data(), g.data().size());
}

}  // namespace

std::vector<std::uint8_t> serialize_archive(const MapArchive& a) {
  const auto& m = a.map;
  json records = json::array();
  for (const auto& r : m.records) records.push_back(record_to_json(r));
  const json header = {
      {"grid", grid_header(m.bundle.grid)},
      {"embed_dim", m.bundle.embed_dim()},
      {"categories", m.categories.labels()},
      {"colors", m.colors.labels()},
      {"category_embeddings", {{"rows", m.category_embeddings.rows}, {"dim", m.category_embeddings.dim}}},
      {"color_embeddings", {{"rows", m.color_embeddings.rows}, {"dim", m.color_embeddings.dim}}},
      {"records", records},
      {"provenance",
       {{"dataset_hash", a.provenance.dataset_hash},
        {"config_hash", a.provenance.config_hash},
        {"tool_version", a.provenance.tool_version},
        {"mask_source", a.provenance.mask_source}}}};
  const std::string htext = header.dump();

  detail::ByteWriter raw;
  raw.le<std::uint64_t>(htext.size());
  raw.text(htext);
  raw.le_all(m.bundle.bev_color.data());
  raw.le_all(m.bundle.height.data());
  raw.le_all(m.bundle.embedding.data());
  raw.le_all(m.bundle.obs_count.data());
  raw.le_all(m.category_embeddings.values);
  raw.le_all(m.color_embeddings.values);
  raw.le_all(m.category_labels.data());
  raw.le_all(m.color_labels.data());
  raw.le_all(m.instance_ids.data());
  raw.le_all(m.color_ids.data());
  const auto& payload = raw.buffer();

  uLongf zlen = compressBound(uLong(payload.size()));
  std::vector<std::uint8_t> z(zlen);
  if (compress2(z.data(), &zlen, payload.data(), uLong(payload.size()), 6) != Z_OK)
    throw Error("archive: compression failed");
  z.resize(zlen);

  detail::ByteWriter out;
  out.text("IVLM");
  out.le<std::uint32_t>(kArchiveVersion);
  out.le<std::uint64_t>(z.size());
  out.le<std::uint32_t>(crc32(z));
  out.le<std::uint64_t>(payload.size());
  out.bytes(z);
  return std::move(out.buffer());
}

MapArchive deserialize_archive(std::span<const std::uint8_t> bytes, const std::string& context) {
  if (bytes.size() < 4 || std::string(bytes.begin(), bytes.begin() + 4) != "IVLM")
    throw FormatError(context + ": not a map archive (bad magic)");
  if (bytes.size() < kHeaderSize)
    throw FormatError(context + ": checksum failure (truncated header)");
  detail::ByteReader hr(bytes.first(kHeaderSize), context);
  hr.take(4);
  const auto version = hr.le<std::uint32_t>();
  if (version != kArchiveVersion)
    throw FormatError(context + ": archive version " + std::to_string(version) +
                      " is not supported (expected " + std::to_string(kArchiveVersion) + ")");
  const auto zsize = hr.le<std::uint64_t>();
  const auto crc = hr.le<std::uint32_t>();
  const auto rawsize = hr.le<std::uint64_t>();
  const auto body = bytes.subspan(kHeaderSize);
  if (body.size() != zsize || crc32(body) != crc)
    throw FormatError(context + ": checksum failure (truncated or corrupted archive)");
  if (rawsize > (std::uint64_t(1) << 36)) throw FormatError(context + ": implausible payload size");

  std::vector<std::uint8_t> raw(rawsize);
  uLongf rlen = uLongf(rawsize);
  if (uncompress(raw.data(), &rlen, body.data(), uLong(body.size())) != Z_OK || rlen != rawsize)
    throw FormatError(context + ": corrupted payload");

  detail::ByteReader r(raw, context);
  const auto hlen = r.le<std::uint64_t>();
  const auto htext = r.take(hlen);
  MapArchive a;
  auto& m = a.map;
  try {
    const json h = json::parse(htext.begin(), htext.end());
    const auto& g = h.at("grid");
    m.bundle.grid.rows = g.at("rows").get<int>();
    m.bundle.grid.cols = g.at("cols").get<int>();
    m.bundle.grid.cell_size = g.at("cell_size").get<double>();
    m.bundle.grid.robot_height = g.at("robot_height").get<double>();
    m.bundle.grid.validate();
    const int dim = h.at("embed_dim").get<int>();
    m.categories = vocab::Vocabulary(h.at("categories").get<std::vector<std::string>>(),
                                     vocab::VocabularyKind::category);
    m.colors = vocab::Vocabulary(h.at("colors").get<std::vector<std::string>>(),
                                 vocab::VocabularyKind::color);
    m.category_embeddings.rows = h.at("category_embeddings").at("rows").get<int>();
    m.category_embeddings.dim = h.at("category_embeddings").at("dim").get<int>();
    m.color_embeddings.rows = h.at("color_embeddings").at("rows").get<int>();
    m.color_embeddings.dim = h.at("color_embeddings").at("dim").get<int>();
    for (const auto& rec : h.at("records")) m.records.push_back(record_from_json(rec));
    const auto& p = h.at("provenance");
    a.provenance.dataset_hash = p.at("dataset_hash").get<std::uint32_t>();
    a.provenance.config_hash = p.at("config_hash").get<std::uint32_t>();
    a.provenance.tool_version = p.at("tool_version").get<std::string>();
    a.provenance.mask_source = p.value("mask_source", std::string());

    const int rows = m.bundle.grid.rows;
    const int cols = m.bundle.grid.cols;
    if (dim < 1 || m.category_embeddings.dim != dim || m.color_embeddings.dim != dim ||
        m.category_embeddings.rows != m.categories.size() ||
        m.color_embeddings.rows != m.colors.size())
      throw FormatError("inconsistent embedding dimensions");
    read_plane(r, m.bundle.bev_color, rows, cols, 3);
    read_plane(r, m.bundle.height, rows, cols, 1);
    read_plane(r, m.bundle.embedding, rows, cols, dim);
    read_plane(r, m.bundle.obs_count, rows, cols, 1);
    r.le_all(m.category_embeddings.values,
             std::size_t(m.category_embeddings.rows) * std::size_t(dim));
    r.le_all(m.color_embeddings.values, std::size_t(m.color_embeddings.rows) * std::size_t(dim));
    read_plane(r, m.category_labels, rows, cols, 1);
    read_plane(r, m.color_labels, rows, cols, 1);
    read_plane(r, m.instance_ids, rows, cols, 1);
    read_plane(r, m.color_ids, rows, cols, 1);
    if (r.remaining() != 0) throw FormatError("trailing bytes after map planes");
    for (const auto& rec : m.records)
      if (!rec.segmentation.same_shape(rows, cols))
        throw FormatError("record mask does not match the grid");
  } catch (const json::exception& e) {
    throw FormatError(context + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(context + ": " + e.what());
  } catch (const Error& e) {
    throw FormatError(context + ": " + e.what());
  }
  m.refresh_index();
  return a;
}

void save_map(const std::filesystem::path& path, const MapArchive& archive) {
  write_file(path, serialize_archive(archive));
}

MapArchive load_map(const std::filesystem::path& path) {
  return deserialize_archive(read_file(path), path.string());
}

}  // namespace ivlmap::io
