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
#include <limits>

#include "generators.hpp"
#include "ivlmap/error.hpp"
#include "ivlmap/geometry.hpp"
#include "oracles.hpp"

namespace ivlmap {
namespace {

using geometry::GridSpec;
using geometry::Vec3;

TEST(Backproject, PrincipalPointLiesOnOpticalAxis) {
  geometry::CameraIntrinsics intr{70, 70, 79.5, 59.5, 0.001};
  auto p = geometry::backproject(59.5, 79.5, 2500, intr);
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, Vec3(0, 0, 2.5));
}

TEST(Backproject, PinholeFormula) {
  geometry::CameraIntrinsics intr{100, 100, 50, 50, 1.0};
  auto p = geometry::backproject(50, 150, 2, intr);
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, Vec3(2, 0, 2));
}

TEST(Backproject, ZeroDepthGivesNoPoint) {
  geometry::CameraIntrinsics intr{100, 100, 50, 50, 1.0};
  EXPECT_FALSE(geometry::backproject(10, 10, 0, intr));
}

TEST(Intrinsics, Validation) {
  EXPECT_NO_THROW((geometry::CameraIntrinsics{1, 1, 0, 0, 1}.validate()));
  EXPECT_THROW((geometry::CameraIntrinsics{0, 1, 0, 0, 1}.validate()), FormatError);
  EXPECT_THROW((geometry::CameraIntrinsics{1, 1, 0, 0, -1}.validate()), FormatError);
  EXPECT_THROW((geometry::CameraIntrinsics{1, NAN, 0, 0, 1}.validate()), FormatError);
}

TEST(ToWorld, IdentityAndTranslation) {
  geometry::Pose pose;
  EXPECT_EQ(geometry::to_world(Vec3(1, 2, 3), pose), Vec3(1, 2, 3));
  pose.translation = Vec3(1, 0, 0);
  EXPECT_EQ(geometry::to_world(Vec3::Zero(), pose), Vec3(1, 0, 0));
}

TEST(ToWorld, RobotCameraRotationMapsOpticalAxisToForward) {
  geometry::Pose pose;
  pose.rotation = geometry::robot_camera_rotation();
  EXPECT_EQ(geometry::to_world(Vec3(0, 0, 1), pose), Vec3(1, 0, 0));
}

TEST(Rotation, OrthonormalWithUnitDeterminant) {
  const auto rot = geometry::robot_camera_rotation();
  EXPECT_EQ(rot.transpose() * rot, geometry::Mat3::Identity());
  EXPECT_EQ(rot.determinant(), 1.0);
  EXPECT_EQ(rot.col(0), Vec3(0, -1, 0));
  EXPECT_EQ(rot.col(1), Vec3(0, 0, -1));
  EXPECT_EQ(rot.col(2), Vec3(1, 0, 0));
}

TEST(Pose, ValidateRejectsSkewedRotation) {
  geometry::Pose pose;
  EXPECT_NO_THROW(pose.validate());
  pose.rotation(0, 1) = 2e-3;
  EXPECT_GT(pose.orthonormality_error(), 1e-3);
  EXPECT_THROW(pose.validate(1e-3), FormatError);
  pose.rotation = -geometry::Mat3::Identity();  // reflection, det -1
  EXPECT_THROW(pose.validate(), FormatError);
}

TEST(GridProjection, MapCentre) {
  GridSpec g{1000, 1000, 0.05, 1.5};
  EXPECT_EQ(geometry::project_to_grid(Vec3(0, 0.3, 0), g), (Cell{500, 500}));
}

TEST(GridProjection, WorkedExample) {
  GridSpec g{1000, 1000, 0.05, 1.5};
  EXPECT_EQ(geometry::project_to_grid(Vec3(1.0, 0, -0.5), g), (Cell{520, 510}));
}

TEST(GridProjection, OutOfBounds) {
  GridSpec g{1000, 1000, 0.05, 1.5};
  EXPECT_FALSE(geometry::project_to_grid(Vec3(30, 0, 0), g));
  EXPECT_EQ(geometry::project_unbounded(Vec3(30, 0, 0), g).px, 1100);
}

TEST(GridProjection, CellCentreRoundTrip) {
  GridSpec g{37, 53, 0.07, 1.5};
  for_each_cell(g.rows, g.cols, [&](Cell c) {
    const auto xz = geometry::cell_center_xz(c, g);
    EXPECT_EQ(geometry::project_to_grid(Vec3(xz.x(), 0, xz.y()), g), c);
  });
}

TEST(GridProjection, MatchesRationalOracle) {
  testing::Gen gen(11);
  for (int i = 0; i < 20000; ++i) {
    GridSpec g{gen.int_in(1, 2000), gen.int_in(1, 2000),
               gen.coin() ? 0.05 : gen.real_in(0.01, 0.5), 1.5};
    const double x = gen.coordinate(60, g.cell_size);
    const double z = gen.coordinate(60, g.cell_size);
    const Cell want = testing::eq1_exact(x, z, g);
    ASSERT_EQ(geometry::project_unbounded(Vec3(x, 0, z), g), want)
        << "x=" << x << " z=" << z << " s=" << g.cell_size;
  }
}

TEST(FloorScaledOffset, HalfBoundaryIsExact) {
  // 0.025 / 0.05 is not exactly 0.5 in binary; the exact answer depends on
  // which side of the half the stored values fall.
  GridSpec g{2, 2, 0.05, 1.5};
  for (double v : {0.025, -0.025, 0.075, -0.075, 0.125, 1e-300, -1e-300}) {
    const Cell want = testing::eq1_exact(v, v, g);
    EXPECT_EQ(geometry::floor_scaled_offset(v, 0.05, 1.5), want.px) << v;
  }
}

TEST(GridSpec, Validation) {
  EXPECT_NO_THROW((GridSpec{1, 1, 0.1, 1}.validate()));
  EXPECT_THROW((GridSpec{0, 1, 0.1, 1}.validate()), FormatError);
  EXPECT_THROW((GridSpec{1, 1, 0, 1}.validate()), FormatError);
  EXPECT_THROW((GridSpec{1, 1, 0.1, 0}.validate()), FormatError);
}

}  // namespace
}  // namespace ivlmap
