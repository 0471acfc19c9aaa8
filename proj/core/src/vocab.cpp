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

#include "ivlmap/vocab.hpp"

#include <cmath>
#include <set>

#include "ivlmap/error.hpp"

namespace ivlmap::vocab {

Vocabulary::Vocabulary(std::vector<std::string> labels, VocabularyKind kind)
    : labels_(std::move(labels)), kind_(kind) {
  if (labels_.empty()) throw FormatError("vocabulary must not be empty");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw FormatError("vocabulary contains an empty label");
    if (!seen.insert(l).second) throw FormatError("vocabulary label '" + l + "' is duplicated");
  }
}

std::optional<int> Vocabulary::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return int(i);
  return std::nullopt;
}

LabelEmbeddings load_label_embeddings(const Vocabulary& vocab, int rows, int dim,
                                      std::span<const float> values) {
  if (rows != vocab.size())
    throw FormatError("label embeddings: " + std::to_string(rows) + " rows for a vocabulary of " +
                      std::to_string(vocab.size()) + " labels");
  if (dim < 1 || values.size() != std::size_t(rows) * std::size_t(dim))
    throw FormatError("label embeddings: value count does not match rows x dim");
  LabelEmbeddings E{rows, dim, std::vector<float>(values.begin(), values.end())};
  for (int i = 0; i < rows; ++i) {
    double sq = 0.0;
    for (int k = 0; k < dim; ++k) {
      const float v = E.values[std::size_t(i) * dim + k];
      if (!std::isfinite(v))
        throw FormatError("label embeddings: non-finite value in row " + std::to_string(i) +
                          " ('" + vocab.at(i) + "')");
      sq += double(v) * v;
    }
    if (sq == 0.0)
      throw FormatError("label embeddings: row " + std::to_string(i) + " ('" + vocab.at(i) +
                        "') is zero and cannot be normalized");
    const double inv = 1.0 / std::sqrt(sq);
    for (int k = 0; k < dim; ++k) {
      float& v = E.values[std::size_t(i) * dim + k];
      v = static_cast<float>(v * inv);
    }
  }
  return E;
}

namespace {

void check_dims(const Grid<float>& M, const LabelEmbeddings& E) {
  if (M.channels() != E.dim)
    throw FormatError("similarity: map embedding has " + std::to_string(M.channels()) +
                      " channels, label embeddings have " + std::to_string(E.dim));
}

}  // namespace

Grid<float> similarity(const Grid<float>& M, const LabelEmbeddings& E) {
  check_dims(M, E);
  Grid<float> P(M.rows(), M.cols(), E.rows, 0.0f);
  for (int r = 0; r < M.rows(); ++r) {
    for (int c = 0; c < M.cols(); ++c) {
      const auto m = M.channels_at(r, c);
      auto p = P.channels_at(r, c);
      for (int k = 0; k < E.rows; ++k) {
        const auto e = E.row(k);
        float dot = 0.0f;
        for (int d = 0; d < E.dim; ++d) dot += m[d] * e[d];
        p[k] = dot;
      }
    }
  }
  return P;
}

namespace {

int argmax_row(std::span<const float> row) {
  int best = 0;
  bool any_nonzero = row[0] != 0.0f;
  for (int k = 1; k < int(row.size()); ++k) {
    any_nonzero = any_nonzero || row[k] != 0.0f;
    if (row[k] > row[best]) best = k;
  }
  return any_nonzero ? best : 0;
}

}  // namespace

PixelLabelMap pixel_label_map(const Grid<float>& P, bool keep_similarity) {
  PixelLabelMap out;
  out.labels = LabelGrid(P.rows(), P.cols(), 1, 0);
  for (int r = 0; r < P.rows(); ++r)
    for (int c = 0; c < P.cols(); ++c) out.labels(r, c) = argmax_row(P.channels_at(r, c));
  if (keep_similarity) out.similarity = P;
  return out;
}

LabelGrid label_map(const Grid<float>& M, const LabelEmbeddings& E) {
  check_dims(M, E);
  LabelGrid labels(M.rows(), M.cols(), 1, 0);
  std::vector<float> scores(std::size_t(E.rows));
  for (int r = 0; r < M.rows(); ++r) {
    for (int c = 0; c < M.cols(); ++c) {
      const auto m = M.channels_at(r, c);
      for (int k = 0; k < E.rows; ++k) {
        const auto e = E.row(k);
        float dot = 0.0f;
        for (int d = 0; d < E.dim; ++d) dot += m[d] * e[d];
        scores[std::size_t(k)] = dot;
      }
      labels(r, c) = argmax_row(scores);
    }
  }
  return labels;
}

}  // namespace ivlmap::vocab
