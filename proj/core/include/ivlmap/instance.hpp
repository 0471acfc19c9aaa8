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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ivlmap/grid.hpp"
#include "ivlmap/mapping.hpp"
#include "ivlmap/vocab.hpp"

namespace ivlmap::instance {

inline constexpr const char* kUnknownLabel = "unknown";
inline constexpr int kBackgroundLabel = 0;

enum class MaskProvenance { external_file, surrogate_segmenter };

/// One segmentation proposal on the BEV grid, plus the segmenter's own
/// confidence fields when available.
struct MaskProposal {
  BinaryMask segmentation;
  double predicted_iou = 1.0;
  double stability_score = 1.0;
  std::vector<std::array<double, 2>> point_coords;
  std::array<int, 4> crop_box{0, 0, 0, 0};
};

struct MaskSet {
  std::vector<MaskProposal> masks;
  MaskProvenance provenance = MaskProvenance::surrogate_segmenter;
};

/// Attribute record of one instance. Field names follow the interchange JSON.
struct MaskRecord {
  BinaryMask segmentation;
  std::size_t area = 0;
  std::array<int, 4> bbox{0, 0, 0, 0};  // x (col), y (row), w, h in cells
  double predicted_iou = 1.0;
  std::vector<std::array<double, 2>> point_coords;
  double stability_score = 1.0;
  std::array<int, 4> crop_box{0, 0, 0, 0};
  std::string label = kUnknownLabel;
  int label_id = 0;
  int num_of_same_class = 0;
  std::string color = kUnknownLabel;
  double score = 0.0;        // winning category score
  double color_score = 0.0;  // winning color score

  bool labeled() const { return label != kUnknownLabel; }
  friend bool operator==(const MaskRecord&, const MaskRecord&) = default;
};

struct FusionOptions {
  double reject_threshold = 0.3;
  int min_mask_area = 20;
};

/// Instance-aware map: the embedding map plus instance ids U, color ids V
/// (color index + 1, 0 = none) and the record table.
struct IvlMap {
  mapping::MapBundle bundle;
  vocab::Vocabulary categories;
  vocab::Vocabulary colors;
  vocab::LabelEmbeddings category_embeddings;
  vocab::LabelEmbeddings color_embeddings;
  LabelGrid category_labels;  // P̄ over categories
  LabelGrid color_labels;     // P̄ over colors
  LabelGrid instance_ids;     // U
  LabelGrid color_ids;        // V
  std::vector<MaskRecord> records;

  /// Mask centroids in cell units, parallel to `records`.
  std::vector<CellF> centroids;

  const MaskRecord* find_record(int label_id) const;
  std::size_t record_index(int label_id) const;
  /// Recomputes `centroids` from the record masks.
  void refresh_index();

  friend bool operator==(const IvlMap& a, const IvlMap& b) {
    return a.bundle == b.bundle && a.categories == b.categories && a.colors == b.colors &&
           a.category_embeddings == b.category_embeddings &&
           a.color_embeddings == b.color_embeddings && a.category_labels == b.category_labels &&
           a.color_labels == b.color_labels && a.instance_ids == b.instance_ids &&
           a.color_ids == b.color_ids && a.records == b.records;
  }
};

/// 3x3 median of label indices with replicated borders.
LabelGrid median_filter3(const LabelGrid& labels);

/// 4-connected components of the median-smoothed label raster, one mask per
/// component of area >= min_area, background label excluded.
MaskSet surrogate_segment(const LabelGrid& pixel_labels, int min_area);

/// Labels inside the mask, background elsewhere. Throws FormatError on an empty
/// or mis-shaped mask.
LabelGrid region_match(const LabelGrid& pixel_labels, const BinaryMask& mask);

struct UniqueCounts {
  std::vector<int> labels;             // ascending label index
  std::vector<std::size_t> counts;
  std::size_t background_count = 0;    // in-mask cells carrying the background label
};

/// Counts labels over the mask's cells. Cells carrying `background` are
/// tallied separately; pass nullopt when every index is a real label.
UniqueCounts unique_counts(const LabelGrid& matched, const BinaryMask& mask,
                           std::optional<int> background = kBackgroundLabel);

struct ScoredLabels {
  std::vector<int> labels;
  std::vector<double> scores;  // descending, sum to 1
};

/// score_i = count_i / sum(counts), sorted by score descending then label
/// index ascending. Throws Error when there is nothing to score.
ScoredLabels score_labels(const UniqueCounts& counts);

struct LabelAssignment {
  std::string label = kUnknownLabel;
  int index = -1;  // -1 when unknown
  double score = 0.0;
};

/// Region match -> unique counts -> score -> top-1 with a reject threshold.
/// Regions without any non-background cell, or whose best score is below
/// the threshold, come back as "unknown".
LabelAssignment assign_label(const BinaryMask& mask, const LabelGrid& pixel_labels,
                             const vocab::Vocabulary& vocab, double reject_threshold = 0.3);

/// Same pipeline over the color pixel-label map. Color index 0 is an ordinary
/// color, so nothing is treated as background here.
LabelAssignment assign_color(const BinaryMask& mask, const LabelGrid& color_pixel_labels,
                             const vocab::Vocabulary& colors, double reject_threshold = 0.3);

/// Tight bounding box (x, y, w, h) of a non-empty mask.
std::array<int, 4> mask_bbox(const BinaryMask& mask);
CellF mask_centroid(const BinaryMask& mask);

struct IvlMapInputs {
  mapping::MapBundle bundle;
  vocab::Vocabulary categories;
  vocab::Vocabulary colors;
  vocab::LabelEmbeddings category_embeddings;
  vocab::LabelEmbeddings color_embeddings;
  LabelGrid category_labels;
  LabelGrid color_labels;
};

/// Labels every mask, assigns sequential label_ids (1, 2, ...) in mask order,
/// counts same-class records and paints U/V with smaller masks on top.
IvlMap build_ivlmap(IvlMapInputs inputs, const MaskSet& masks, const FusionOptions& options);

/// Convenience: computes both label maps from the bundle's embedding map.
IvlMapInputs make_inputs(mapping::MapBundle bundle, vocab::Vocabulary categories,
                         vocab::Vocabulary colors, vocab::LabelEmbeddings category_embeddings,
                         vocab::LabelEmbeddings color_embeddings);

}  // namespace ivlmap::instance
