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

#include "ivlmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "ivlmap/error.hpp"

namespace ivlmap::geometry {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void CameraIntrinsics::validate() const {
  if (!positive_finite(fx) || !positive_finite(fy))
    throw FormatError("intrinsics: focal lengths must be positive (fx=" + std::to_string(fx) +
                      ", fy=" + std::to_string(fy) + ")");
  if (!positive_finite(depth_scale))
    throw FormatError("intrinsics: depth_scale must be positive");
  if (!std::isfinite(cx) || !std::isfinite(cy))
    throw FormatError("intrinsics: principal point must be finite");
}

double Pose::orthonormality_error() const {
  const Mat3 gram = rotation.transpose() * rotation - Mat3::Identity();
  return gram.cwiseAbs().maxCoeff() + std::abs(rotation.determinant() - 1.0);
}

void Pose::validate(double tolerance) const {
  if (!rotation.allFinite() || !translation.allFinite())
    throw FormatError("pose: non-finite entries");
  const double err = orthonormality_error();
  if (!(err <= tolerance))
    throw FormatError("pose: rotation is not orthonormal with det +1 (error " +
                      std::to_string(err) + ")");
}

void GridSpec::validate() const {
  if (rows < 1 || cols < 1)
    throw FormatError("grid: size must be at least 1x1 (got " + std::to_string(rows) + "x" +
                      std::to_string(cols) + ")");
  if (!positive_finite(cell_size)) throw FormatError("grid: cell_size must be positive");
  if (!positive_finite(robot_height)) throw FormatError("grid: robot_height must be positive");
}

std::optional<Vec3> backproject(double row, double col, double depth_raw,
                                const CameraIntrinsics& intr) {
  if (!(depth_raw > 0.0)) return std::nullopt;
  const double d = depth_raw * intr.depth_scale;
  return Vec3((col - intr.cx) * d / intr.fx, (row - intr.cy) * d / intr.fy, d);
}

long long floor_scaled_offset(double value, double s, double offset) {
  // Candidate from ordinary floating point, then corrected with fused
  // multiply-adds. fma(-b, s, value) rounds value - b*s once, so its sign is
  // the sign of the exact residual.
  const double approx = std::floor(offset + value / s);
  constexpr double kLimit = 4503599627370496.0;  // 2^52
  if (!(std::abs(approx) < kLimit)) return approx < 0 ? -(1LL << 52) : (1LL << 52);
  auto k = static_cast<long long>(approx);
  auto below = [&](long long cand) {
    // true when offset + value/s < cand, i.e. value < (cand - offset) * s
    const double b = double(cand) - offset;
    return std::fma(-b, s, value) < 0.0;
  };
  while (below(k)) --k;
  while (!below(k + 1)) ++k;
  return k;
}

Cell project_unbounded(const Vec3& p_world, const GridSpec& grid) {
  const double row_offset = grid.rows / 2.0 + 0.5;
  const double col_offset = grid.cols / 2.0 + 0.5;
  const long long px = floor_scaled_offset(p_world.x(), grid.cell_size, row_offset);
  const long long py = floor_scaled_offset(-p_world.z(), grid.cell_size, col_offset);
  constexpr long long lo = std::numeric_limits<int>::min();
  constexpr long long hi = std::numeric_limits<int>::max();
  return Cell{int(std::clamp(px, lo, hi)), int(std::clamp(py, lo, hi))};
}

std::optional<Cell> project_to_grid(const Vec3& p_world, const GridSpec& grid) {
  if (!p_world.allFinite()) return std::nullopt;
  const Cell c = project_unbounded(p_world, grid);
  if (c.px < 0 || c.px >= grid.rows || c.py < 0 || c.py >= grid.cols) return std::nullopt;
  return c;
}

Eigen::Vector2d cell_center_xz(Cell c, const GridSpec& grid) {
  return {(c.px - grid.rows / 2.0) * grid.cell_size, (grid.cols / 2.0 - c.py) * grid.cell_size};
}

Mat3 robot_camera_rotation() {
  Mat3 rot;
  rot << 0, 0, 1,
        -1, 0, 0,
         0, -1, 0;
  return rot;
}

}  // namespace ivlmap::geometry
