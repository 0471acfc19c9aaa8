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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivlmap/grid.hpp"

namespace ivlmap::vocab {

enum class VocabularyKind { category, color };

/// Ordered label list. For category vocabularies index 0 is the background
/// ("floor") label that region matching uses for cells outside a mask.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> labels, VocabularyKind kind);

  const std::vector<std::string>& labels() const { return labels_; }
  VocabularyKind kind() const { return kind_; }
  int size() const { return int(labels_.size()); }
  const std::string& at(int index) const { return labels_.at(std::size_t(index)); }
  /// Index of `label` or nullopt.
  std::optional<int> find(std::string_view label) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> labels_;
  VocabularyKind kind_ = VocabularyKind::category;
};

/// N x C label-embedding matrix with unit rows.
struct LabelEmbeddings {
  int rows = 0;
  int dim = 0;
  std::vector<float> values;  // row-major

  std::span<const float> row(int i) const {
    return {values.data() + std::size_t(i) * std::size_t(dim), std::size_t(dim)};
  }
  friend bool operator==(const LabelEmbeddings&, const LabelEmbeddings&) = default;
};

/// Normalizes rows and checks them against the vocabulary. Throws FormatError
/// on a row-count mismatch, non-finite values or a zero row.
LabelEmbeddings load_label_embeddings(const Vocabulary& vocab, int rows, int dim,
                                      std::span<const float> values);

/// Per-cell argmax labels, optionally with the full score tensor.
struct PixelLabelMap {
  LabelGrid labels;
  std::optional<Grid<float>> similarity;
};

/// P[i,j,k] = <M[i,j,:], E[k,:]>.
Grid<float> similarity(const Grid<float>& map_embedding, const LabelEmbeddings& E);

/// Smallest index attaining the row maximum; all-zero rows map to 0.
PixelLabelMap pixel_label_map(const Grid<float>& P, bool keep_similarity = false);

/// similarity() followed by pixel_label_map() without materializing P.
LabelGrid label_map(const Grid<float>& map_embedding, const LabelEmbeddings& E);

}  // namespace ivlmap::vocab
