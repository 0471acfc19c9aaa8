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


// Small hand-rolled generators for the property tests. Everything draws from
// one seeded mt19937_64 so a failing case can be replayed from its seed.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "ivlmap/geometry.hpp"
#include "ivlmap/grid.hpp"
#include "ivlmap/mapping.hpp"

namespace ivlmap::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int int_in(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real_in(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  // Doubles with awkward binary expansions: mostly uniform, sometimes exactly on
  // a half-cell boundary or one ulp either side of it.
  double coordinate(double extent, double cell_size) {
    const int mode = int_in(0, 3);
    if (mode == 0) return real_in(-extent, extent);
    const double k = double(int_in(-int(extent / cell_size), int(extent / cell_size)));
    const double edge = (k + 0.5) * cell_size;
    if (mode == 1) return edge;
    if (mode == 2) return std::nextafter(edge, 1e9);
    return std::nextafter(edge, -1e9);
  }

  // Occupancy with random rectangles and speckle; 1 = blocked.
  mapping::OccupancyGrid occupancy(int rows, int cols, double density) {
    mapping::OccupancyGrid occ(rows, cols, 1, 0);
    for (auto& v : occ.data()) v = coin(density) ? 1 : 0;
    const int walls = int_in(0, 4);
    for (int w = 0; w < walls; ++w) {
      const bool horizontal = coin();
      const int at = horizontal ? int_in(0, rows - 1) : int_in(0, cols - 1);
      const int gap = horizontal ? int_in(0, cols - 1) : int_in(0, rows - 1);
      const int n = horizontal ? cols : rows;
      for (int i = 0; i < n; ++i) {
        if (i == gap) continue;
        if (horizontal) occ(at, i) = 1; else occ(i, at) = 1;
      }
    }
    return occ;
  }

  Cell free_cell(const mapping::OccupancyGrid& occ) {
    std::vector<Cell> free;
    for_each_cell(occ.rows(), occ.cols(), [&](Cell c) {
      if (occ[c] == 0) free.push_back(c);
    });
    if (free.empty()) return {-1, -1};
    return free[std::size_t(int_in(0, int(free.size()) - 1))];
  }

  // Label raster whose values come from a few blobs over a noisy background.
  LabelGrid labels(int rows, int cols, int n_labels, double noise) {
    LabelGrid g(rows, cols, 1, 0);
    const int blobs = int_in(1, 6);
    for (int b = 0; b < blobs; ++b) {
      const int label = int_in(0, n_labels - 1);
      const int r0 = int_in(0, rows - 1), c0 = int_in(0, cols - 1);
      const int r1 = std::min(rows - 1, r0 + int_in(0, rows / 2));
      const int c1 = std::min(cols - 1, c0 + int_in(0, cols / 2));
      for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) g(r, c) = label;
    }
    for (auto& v : g.data())
      if (coin(noise)) v = int_in(0, n_labels - 1);
    return g;
  }

  BinaryMask mask(int rows, int cols, double fill) {
    BinaryMask m(rows, cols, 1, 0);
    for (auto& v : m.data()) v = coin(fill) ? 1 : 0;
    m(int_in(0, rows - 1), int_in(0, cols - 1)) = 1;  // never empty
    return m;
  }

  geometry::Mat3 rotation() {
    Eigen::Quaterniond q(real_in(-1, 1), real_in(-1, 1), real_in(-1, 1), real_in(-1, 1));
    if (q.norm() < 1e-6) q = Eigen::Quaterniond::Identity();
    return q.normalized().toRotationMatrix();
  }

  template <typename T>
  void shuffle(std::vector<T>& v) { std::shuffle(v.begin(), v.end(), rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ivlmap::testing
