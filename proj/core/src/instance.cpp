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

#include "ivlmap/instance.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "ivlmap/error.hpp"

namespace ivlmap::instance {

const MaskRecord* IvlMap::find_record(int label_id) const {
  for (const auto& r : records)
    if (r.label_id == label_id) return &r;
  return nullptr;
}

std::size_t IvlMap::record_index(int label_id) const {
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].label_id == label_id) return i;
  throw NotFoundError("no record with label_id " + std::to_string(label_id));
}

void IvlMap::refresh_index() {
  centroids.clear();
  centroids.reserve(records.size());
  for (const auto& r : records) centroids.push_back(mask_centroid(r.segmentation));
}

LabelGrid median_filter3(const LabelGrid& labels) {
  const int rows = labels.rows();
  const int cols = labels.cols();
  LabelGrid out(rows, cols, 1, 0);
  std::array<std::int32_t, 9> window{};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int n = 0;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc)
          window[std::size_t(n++)] =
              labels(std::clamp(r + dr, 0, rows - 1), std::clamp(c + dc, 0, cols - 1));
      std::nth_element(window.begin(), window.begin() + 4, window.end());
      out(r, c) = window[4];
    }
  }
  return out;
}

MaskSet surrogate_segment(const LabelGrid& pixel_labels, int min_area) {
  const LabelGrid smooth = median_filter3(pixel_labels);
  const int rows = smooth.rows();
  const int cols = smooth.cols();
  MaskSet out;
  out.provenance = MaskProvenance::surrogate_segmenter;
  Grid<std::uint8_t> visited(rows, cols, 1, 0);
  std::vector<Cell> component;
  std::deque<Cell> queue;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int label = smooth(r, c);
      if (label == kBackgroundLabel || visited(r, c)) continue;
      component.clear();
      queue.push_back({r, c});
      visited(r, c) = 1;
      while (!queue.empty()) {
        const Cell cur = queue.front();
        queue.pop_front();
        component.push_back(cur);
        constexpr std::array<Cell, 4> steps{Cell{-1, 0}, Cell{1, 0}, Cell{0, -1}, Cell{0, 1}};
        for (const auto& d : steps) {
          const Cell n{cur.px + d.px, cur.py + d.py};
          if (!smooth.contains(n) || visited[n] || smooth[n] != label) continue;
          visited[n] = 1;
          queue.push_back(n);
        }
      }
      if (int(component.size()) < min_area) continue;
      MaskProposal p;
      p.segmentation = BinaryMask(rows, cols, 1, 0);
      for (const auto& cell : component) p.segmentation[cell] = 1;
      const CellF centroid = mask_centroid(p.segmentation);
      p.point_coords = {{centroid.py, centroid.px}};
      p.crop_box = {0, 0, cols, rows};
      out.masks.push_back(std::move(p));
    }
  }
  return out;
}

LabelGrid region_match(const LabelGrid& pixel_labels, const BinaryMask& mask) {
  if (!pixel_labels.same_shape(mask))
    throw FormatError("region_match: mask shape does not match the label map");
  LabelGrid out(pixel_labels.rows(), pixel_labels.cols(), 1, kBackgroundLabel);
  bool any = false;
  for (std::size_t i = 0; i < mask.data().size(); ++i) {
    if (mask.data()[i]) {
      out.data()[i] = pixel_labels.data()[i];
      any = true;
    }
  }
  if (!any) throw FormatError("region_match: mask is empty");
  return out;
}

UniqueCounts unique_counts(const LabelGrid& matched, const BinaryMask& mask,
                           std::optional<int> background) {
  if (!matched.same_shape(mask))
    throw FormatError("unique_counts: mask shape does not match the label map");
  std::map<int, std::size_t> tally;
  UniqueCounts out;
  for (std::size_t i = 0; i < mask.data().size(); ++i) {
    if (!mask.data()[i]) continue;
    const int label = matched.data()[i];
    if (background && label == *background)
      ++out.background_count;
    else
      ++tally[label];
  }
  for (const auto& [label, count] : tally) {
    out.labels.push_back(label);
    out.counts.push_back(count);
  }
  return out;
}

ScoredLabels score_labels(const UniqueCounts& counts) {
  if (counts.labels.size() != counts.counts.size())
    throw Error("score_labels: label and count lists differ in length");
  const std::size_t total = std::accumulate(counts.counts.begin(), counts.counts.end(),
                                            std::size_t{0});
  if (counts.labels.empty() || total == 0) throw Error("score_labels: nothing to score");
  std::vector<std::size_t> order(counts.labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (counts.counts[a] != counts.counts[b]) return counts.counts[a] > counts.counts[b];
    return counts.labels[a] < counts.labels[b];
  });
  ScoredLabels out;
  for (auto i : order) {
    out.labels.push_back(counts.labels[i]);
    out.scores.push_back(double(counts.counts[i]) / double(total));
  }
  return out;
}

namespace {

LabelAssignment assign_top1(const BinaryMask& mask, const LabelGrid& pixel_labels,
                            const vocab::Vocabulary& vocab, double reject_threshold,
                            std::optional<int> background) {
  const LabelGrid matched = region_match(pixel_labels, mask);
  const UniqueCounts counts = unique_counts(matched, mask, background);
  LabelAssignment out;
  if (counts.labels.empty()) return out;
  const ScoredLabels ranked = score_labels(counts);
  const int best = ranked.labels.front();
  if (best < 0 || best >= vocab.size())
    throw FormatError("label index " + std::to_string(best) + " outside the vocabulary");
  out.score = ranked.scores.front();
  if (out.score < reject_threshold) return out;
  out.index = best;
  out.label = vocab.at(best);
  return out;
}

}  // namespace

LabelAssignment assign_label(const BinaryMask& mask, const LabelGrid& pixel_labels,
                             const vocab::Vocabulary& vocab, double reject_threshold) {
  return assign_top1(mask, pixel_labels, vocab, reject_threshold, kBackgroundLabel);
}

LabelAssignment assign_color(const BinaryMask& mask, const LabelGrid& color_pixel_labels,
                             const vocab::Vocabulary& colors, double reject_threshold) {
  return assign_top1(mask, color_pixel_labels, colors, reject_threshold, std::nullopt);
}

std::array<int, 4> mask_bbox(const BinaryMask& mask) {
  int r0 = std::numeric_limits<int>::max(), c0 = r0, r1 = -1, c1 = -1;
  for (int r = 0; r < mask.rows(); ++r)
    for (int c = 0; c < mask.cols(); ++c)
      if (mask(r, c)) {
        r0 = std::min(r0, r);
        r1 = std::max(r1, r);
        c0 = std::min(c0, c);
        c1 = std::max(c1, c);
      }
  if (r1 < 0) return {0, 0, 0, 0};
  return {c0, r0, c1 - c0 + 1, r1 - r0 + 1};
}

CellF mask_centroid(const BinaryMask& mask) {
  double sr = 0.0, sc = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < mask.rows(); ++r)
    for (int c = 0; c < mask.cols(); ++c)
      if (mask(r, c)) {
        sr += r;
        sc += c;
        ++n;
      }
  if (n == 0) return {};
  return {sr / double(n), sc / double(n)};
}

IvlMapInputs make_inputs(mapping::MapBundle bundle, vocab::Vocabulary categories,
                         vocab::Vocabulary colors, vocab::LabelEmbeddings category_embeddings,
                         vocab::LabelEmbeddings color_embeddings) {
  IvlMapInputs in;
  in.category_labels = vocab::label_map(bundle.embedding, category_embeddings);
  in.color_labels = vocab::label_map(bundle.embedding, color_embeddings);
  in.bundle = std::move(bundle);
  in.categories = std::move(categories);
  in.colors = std::move(colors);
  in.category_embeddings = std::move(category_embeddings);
  in.color_embeddings = std::move(color_embeddings);
  return in;
}

IvlMap build_ivlmap(IvlMapInputs in, const MaskSet& masks, const FusionOptions& options) {
  const auto& grid = in.bundle.grid;
  if (!in.category_labels.same_shape(grid.rows, grid.cols) ||
      !in.color_labels.same_shape(grid.rows, grid.cols))
    throw FormatError("build_ivlmap: label maps do not match the grid");

  IvlMap map;
  int next_id = 1;
  for (const auto& proposal : masks.masks) {
    if (!proposal.segmentation.same_shape(grid.rows, grid.cols))
      throw FormatError("build_ivlmap: mask " + std::to_string(next_id) +
                        " does not match the grid");
    MaskRecord rec;
    rec.segmentation = proposal.segmentation;
    rec.area = mask_area(rec.segmentation);
    if (rec.area == 0)
      throw FormatError("build_ivlmap: mask " + std::to_string(next_id) + " is empty");
    rec.bbox = mask_bbox(rec.segmentation);
    rec.predicted_iou = proposal.predicted_iou;
    rec.stability_score = proposal.stability_score;
    rec.point_coords = proposal.point_coords;
    rec.crop_box = proposal.crop_box;
    const auto cat = assign_label(rec.segmentation, in.category_labels, in.categories,
                                  options.reject_threshold);
    rec.label = cat.label;
    rec.score = cat.score;
    const auto col = assign_color(rec.segmentation, in.color_labels, in.colors,
                                  options.reject_threshold);
    rec.color = col.label;
    rec.color_score = col.score;
    rec.label_id = next_id++;
    map.records.push_back(std::move(rec));
  }

  std::map<std::string, int> per_class;
  for (const auto& r : map.records) ++per_class[r.label];
  for (auto& r : map.records) r.num_of_same_class = per_class[r.label];

  map.instance_ids = LabelGrid(grid.rows, grid.cols, 1, 0);
  map.color_ids = LabelGrid(grid.rows, grid.cols, 1, 0);
  std::vector<std::size_t> order(map.records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Paint large masks first; the smallest (then lowest label_id) ends on top.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = map.records[a];
    const auto& rb = map.records[b];
    if (ra.area != rb.area) return ra.area > rb.area;
    return ra.label_id > rb.label_id;
  });
  for (auto i : order) {
    const auto& r = map.records[i];
    const auto color_index = in.colors.find(r.color);
    const int v = color_index ? *color_index + 1 : 0;
    for (std::size_t k = 0; k < r.segmentation.data().size(); ++k) {
      if (!r.segmentation.data()[k]) continue;
      map.instance_ids.data()[k] = r.label_id;
      map.color_ids.data()[k] = v;
    }
  }

  map.bundle = std::move(in.bundle);
  map.categories = std::move(in.categories);
  map.colors = std::move(in.colors);
  map.category_embeddings = std::move(in.category_embeddings);
  map.color_embeddings = std::move(in.color_embeddings);
  map.category_labels = std::move(in.category_labels);
  map.color_labels = std::move(in.color_labels);
  map.refresh_index();
  return map;
}

}  // namespace ivlmap::instance
