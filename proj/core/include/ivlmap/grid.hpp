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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ivlmap {

/// Integer grid coordinate. `px` indexes rows (first map axis, size H̄),
/// `py` indexes columns (second map axis, size W̄).
struct Cell {
  int px = 0;
  int py = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Euclidean distance between two cells, in cells.
inline double cell_distance(Cell a, Cell b) {
  return std::hypot(double(a.px - b.px), double(a.py - b.py));
}

/// Continuous position on the grid, in cell units.
struct CellF {
  double px = 0.0;
  double py = 0.0;

  friend bool operator==(const CellF&, const CellF&) = default;
};

inline double cell_distance(CellF a, CellF b) { return std::hypot(a.px - b.px, a.py - b.py); }

/// Dense row-major 2D array with optional trailing channel axis.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, int channels = 1, T fill = T{})
      : rows_(rows), cols_(cols), channels_(channels),
        data_(std::size_t(rows) * std::size_t(cols) * std::size_t(channels), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int channels() const { return channels_; }
  std::size_t cell_count() const { return std::size_t(rows_) * std::size_t(cols_); }
  bool empty() const { return data_.empty(); }

  bool contains(Cell c) const { return c.px >= 0 && c.px < rows_ && c.py >= 0 && c.py < cols_; }
  bool same_shape(int rows, int cols) const { return rows == rows_ && cols == cols_; }
  template <typename U>
  bool same_shape(const Grid<U>& o) const {
    return o.rows() == rows_ && o.cols() == cols_;
  }

  std::size_t index(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return (std::size_t(r) * std::size_t(cols_) + std::size_t(c)) * std::size_t(channels_);
  }

  T& operator()(int r, int c, int ch = 0) { return data_[index(r, c) + std::size_t(ch)]; }
  const T& operator()(int r, int c, int ch = 0) const {
    return data_[index(r, c) + std::size_t(ch)];
  }
  T& operator[](Cell c) { return (*this)(c.px, c.py); }
  const T& operator[](Cell c) const { return (*this)(c.px, c.py); }

  std::span<T> channels_at(int r, int c) {
    return {data_.data() + index(r, c), std::size_t(channels_)};
  }
  std::span<const T> channels_at(int r, int c) const {
    return {data_.data() + index(r, c), std::size_t(channels_)};
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  void fill(const T& v) { std::fill(data_.begin(), data_.end(), v); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int channels_ = 1;
  std::vector<T> data_;
};

using BinaryMask = Grid<std::uint8_t>;
using LabelGrid = Grid<std::int32_t>;

template <typename F>
void for_each_cell(int rows, int cols, F&& f) {
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) f(Cell{r, c});
}

/// Number of non-zero cells.
inline std::size_t mask_area(const BinaryMask& m) {
  std::size_t n = 0;
  for (auto v : m.data()) n += v != 0;
  return n;
}

}  // namespace ivlmap
