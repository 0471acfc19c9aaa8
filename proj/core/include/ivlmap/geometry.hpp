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

#include <Eigen/Core>

#include "ivlmap/grid.hpp"

namespace ivlmap::geometry {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pinhole intrinsics. Camera frame: x right, y down, z along the optical axis.
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  double depth_scale = 0.001;  // meters per raw depth unit

  /// Throws FormatError unless fx, fy, depth_scale are positive and finite.
  void validate() const;
};

/// World-from-camera rigid transform: p_world = rotation * p_cam + translation.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  /// Max absolute entry of R^T R - I, plus |det R - 1|.
  double orthonormality_error() const;
  /// Throws FormatError when orthonormality_error() exceeds `tolerance`.
  void validate(double tolerance = 1e-6) const;
};

/// Top-down grid layout. World y is height; the map plane is spanned by x (rows)
/// and z (columns, mirrored).
struct GridSpec {
  int rows = 500;              // H̄
  int cols = 500;              // W̄
  double cell_size = 0.05;     // s, meters per cell
  double robot_height = 1.5;   // h, meters

  void validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Back-projects a pixel with raw depth into the camera frame. Returns nullopt
/// for non-positive depth.
std::optional<Vec3> backproject(double row, double col, double depth_raw,
                                const CameraIntrinsics& intr);

inline Vec3 to_world(const Vec3& p_cam, const Pose& pose) {
  return pose.rotation * p_cam + pose.translation;
}

/// floor(offset + value / s), exact for every finite input: the result is the
/// unique integer k with k <= offset + value/s < k + 1, evaluated as if in
/// infinite precision. `offset` must be a multiple of 0.5.
long long floor_scaled_offset(double value, double s, double offset);

/// Grid projection of a world point:
///   px = floor(H̄/2 + x/s + 0.5),  py = floor(W̄/2 - z/s + 0.5).
/// Returns nullopt when the cell falls outside [0,H̄) x [0,W̄).
std::optional<Cell> project_to_grid(const Vec3& p_world, const GridSpec& grid);

/// Unbounded variant of project_to_grid (no bounds check).
Cell project_unbounded(const Vec3& p_world, const GridSpec& grid);

/// World (x, z) of a cell centre; inverse of project_to_grid on the plane.
Eigen::Vector2d cell_center_xz(Cell c, const GridSpec& grid);

/// Fixed rotation between the robot base frame and the camera frame.
Mat3 robot_camera_rotation();

}  // namespace ivlmap::geometry
