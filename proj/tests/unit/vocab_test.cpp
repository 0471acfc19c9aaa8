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

#include <cmath>

#include "fixtures.hpp"
#include "generators.hpp"
#include "ivlmap/error.hpp"
#include "ivlmap/vocab.hpp"

namespace ivlmap {
namespace {

using vocab::Vocabulary;
using vocab::VocabularyKind;

Vocabulary cats(std::vector<std::string> v) { return Vocabulary(std::move(v), VocabularyKind::category); }

TEST(Vocabulary, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(cats({}), FormatError);
  EXPECT_THROW(cats({"floor", "chair", "chair"}), FormatError);
  EXPECT_THROW(cats({"floor", ""}), FormatError);
  const auto v = cats({"floor", "chair"});
  EXPECT_EQ(v.find("chair"), 1);
  EXPECT_FALSE(v.find("piano"));
}

TEST(LabelEmbeddings, OneHotRowsStayUnit) {
  const auto v = cats({"floor", "chair", "table"});
  std::vector<float> values = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0};
  const auto E = vocab::load_label_embeddings(v, 3, 4, values);
  EXPECT_EQ(E.values, values);
}

TEST(LabelEmbeddings, RowsAreNormalized) {
  const auto v = cats({"floor", "chair"});
  const auto E = vocab::load_label_embeddings(v, 2, 2, std::vector<float>{3, 4, 0, -2});
  EXPECT_FLOAT_EQ(E.values[0], 0.6f);
  EXPECT_FLOAT_EQ(E.values[1], 0.8f);
  EXPECT_FLOAT_EQ(E.values[3], -1.0f);
}

TEST(LabelEmbeddings, Errors) {
  const auto v = cats({"floor", "chair", "table"});
  EXPECT_THROW(vocab::load_label_embeddings(v, 3, 2, std::vector<float>{1, 0, 0, 0, 0, 1}),
               FormatError);
  EXPECT_THROW(vocab::load_label_embeddings(v, 2, 2, std::vector<float>{1, 0, 0, 1}),
               FormatError);
  EXPECT_THROW(vocab::load_label_embeddings(v, 3, 2, std::vector<float>{1, 0, NAN, 1, 0, 1}),
               FormatError);
}

vocab::LabelEmbeddings onehot3() {
  return vocab::load_label_embeddings(cats({"a", "b", "c"}), 3, 3,
                                      std::vector<float>{1, 0, 0, 0, 1, 0, 0, 0, 1});
}

TEST(Similarity, SelfSimilarityIsOne) {
  const auto E = onehot3();
  Grid<float> M(1, 1, 3, 0.0f);
  M(0, 0, 1) = 1;
  const auto P = vocab::similarity(M, E);
  EXPECT_EQ(P(0, 0, 1), 1.0f);
  EXPECT_EQ(vocab::pixel_label_map(P).labels(0, 0), 1);
}

TEST(Similarity, MixedCell) {
  Grid<float> M(1, 1, 3, 0.0f);
  M(0, 0, 0) = 0.6f;
  M(0, 0, 1) = 0.8f;
  const auto P = vocab::similarity(M, onehot3());
  EXPECT_FLOAT_EQ(P(0, 0, 0), 0.6f);
  EXPECT_FLOAT_EQ(P(0, 0, 1), 0.8f);
  EXPECT_FLOAT_EQ(P(0, 0, 2), 0.0f);
}

TEST(Similarity, ZeroCellGivesZeroRowAndLabelZero) {
  Grid<float> M(2, 2, 3, 0.0f);
  const auto P = vocab::similarity(M, onehot3());
  for (float v : P.data()) EXPECT_EQ(v, 0.0f);
  EXPECT_EQ(vocab::pixel_label_map(P).labels, LabelGrid(2, 2, 1, 0));
}

TEST(Similarity, DimensionMismatchThrows) {
  Grid<float> M(1, 1, 2, 0.0f);
  EXPECT_THROW(vocab::similarity(M, onehot3()), FormatError);
  EXPECT_THROW(vocab::label_map(M, onehot3()), FormatError);
}

TEST(PixelLabelMap, ArgmaxAndTieRule) {
  Grid<float> P(1, 3, 3, 0.0f);
  const float rows[3][3] = {{0.1f, 0.9f, 0.3f}, {0.5f, 0.5f, 0.2f}, {-0.2f, -0.1f, -0.5f}};
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < 3; ++k) P(0, c, k) = rows[c][k];
  const auto out = vocab::pixel_label_map(P, true);
  EXPECT_EQ(out.labels(0, 0), 1);
  EXPECT_EQ(out.labels(0, 1), 0);
  EXPECT_EQ(out.labels(0, 2), 1);
  ASSERT_TRUE(out.similarity);
  EXPECT_EQ(*out.similarity, P);
}

TEST(PixelLabelMap, FusedPathMatchesTwoStep) {
  testing::Gen gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen.int_in(1, 6), dim = gen.int_in(1, 8);
    std::vector<float> e(std::size_t(n * dim));
    for (auto& v : e) v = float(gen.real_in(-1, 1));
    e[0] = 1.0f;  // keep row 0 non-zero
    for (int i = 1; i < n; ++i) e[std::size_t(i * dim)] += 2.0f;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("l" + std::to_string(i));
    const auto E = vocab::load_label_embeddings(cats(names), n, dim, e);
    Grid<float> M(gen.int_in(1, 10), gen.int_in(1, 10), dim, 0.0f);
    for (auto& v : M.data()) v = gen.coin(0.1) ? 0.0f : float(gen.real_in(-1, 1));
    EXPECT_EQ(vocab::label_map(M, E), vocab::pixel_label_map(vocab::similarity(M, E)).labels);
  }
}

TEST(PixelLabelMap, RecoversPlantedLabelsOnNoiselessScene) {
  const auto& fx = testing::fixture();
  const auto& b = fx.map.bundle;
  std::size_t checked = 0;
  for_each_cell(b.grid.rows, b.grid.cols, [&](Cell c) {
    if (!b.observed(c)) return;
    ++checked;
    ASSERT_EQ(fx.map.category_labels[c], fx.scene.category_raster[c]);
    ASSERT_EQ(fx.map.color_labels[c], fx.scene.color_raster[c]);
  });
  EXPECT_GT(checked, 30000u);
}

}  // namespace
}  // namespace ivlmap
