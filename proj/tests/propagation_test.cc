// Copyright 2026 The beamdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "beamdisc/propagation.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "beamdisc/errors.h"
#include "beamdisc/rng.h"
#include "gtest/gtest.h"

namespace beamdisc {
namespace {

TEST(LosProbabilityTest, MatchesIndependentEvaluation) {
  NetworkGeometry geometry;
  EXPECT_NEAR(LosProbability(100.0, geometry), 0.26159059396859634, 1e-14);
}

TEST(LosProbabilityTest, IsOneInsideBreakpoint) {
  NetworkGeometry geometry;
  for (double d : {1.0, 5.0, 19.999, 20.0}) {
    EXPECT_DOUBLE_EQ(LosProbability(d, geometry), 1.0) << d;
  }
}

TEST(LosProbabilityTest, DecreasesWithDistance) {
  NetworkGeometry geometry;
  double previous = 1.0;
  for (double d = 20.0; d <= 500.0; d += 5.0) {
    const double p = LosProbability(d, geometry);
    EXPECT_LE(p, previous) << d;
    EXPECT_GT(p, 0.0);
    previous = p;
  }
}

TEST(LosProbabilityTest, RejectsNonPositiveDistance) {
  NetworkGeometry geometry;
  EXPECT_THROW(LosProbability(0.0, geometry), DomainError);
}

TEST(SampleLinkStateTest, FrequencyTracksProbability) {
  NetworkGeometry geometry;
  Rng rng(7);
  int los = 0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    los += SampleLinkState(100.0, geometry, rng) == LinkState::kLos;
  }
  const double p = LosProbability(100.0, geometry);
  const double sigma = std::sqrt(p * (1 - p) / kDraws);
  EXPECT_NEAR(static_cast<double>(los) / kDraws, p, 5 * sigma);
}

TEST(PathLossTest, FreeSpaceAtOneMeter) {
  LinkBudget budget;
  EXPECT_NEAR(PathLossDb(1.0, LinkState::kLos, budget, 0.0),
              61.384932812893061, 1e-10);
  EXPECT_NEAR(PathLossDb(1.0, LinkState::kNlos, budget, 0.0),
              61.384932812893061, 1e-10);
}

TEST(PathLossTest, LosAtHundredMeters) {
  LinkBudget budget;
  EXPECT_NEAR(PathLossDb(100.0, LinkState::kLos, budget, 0.0),
              103.38493281289306, 1e-10);
}

TEST(PathLossTest, ShadowingAddsLinearly) {
  LinkBudget budget;
  const double base = PathLossDb(50.0, LinkState::kNlos, budget, 0.0);
  EXPECT_NEAR(PathLossDb(50.0, LinkState::kNlos, budget, 4.5), base + 4.5,
              1e-12);
}

TEST(PathLossTest, NlosExceedsLosBeyondOneMeter) {
  LinkBudget budget;
  for (double d : {2.0, 10.0, 100.0}) {
    EXPECT_GT(PathLossDb(d, LinkState::kNlos, budget, 0.0),
              PathLossDb(d, LinkState::kLos, budget, 0.0));
  }
}

TEST(PathLossTest, BelowReferenceDistanceIsDomainError) {
  LinkBudget budget;
  EXPECT_THROW(PathLossDb(0.5, LinkState::kLos, budget, 0.0), DomainError);
}

TEST(ShadowingTest, MomentsMatchConfiguredDeviation) {
  LinkBudget budget;
  Rng rng(11);
  double sum = 0.0;
  double sum_sq = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double x = SampleShadowingDb(LinkState::kNlos, budget, rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / kDraws;
  const double sd = std::sqrt(sum_sq / kDraws - mean * mean);
  EXPECT_NEAR(mean, 0.0, 0.1);
  EXPECT_NEAR(sd, budget.shadowing_std_nlos_db, 0.1);
}

TEST(BeamGeometryTest, EightByOneGain) {
  NetworkGeometry geometry;
  const BeamGeometry beam = MakeBeamGeometry(8, 1, geometry);
  EXPECT_NEAR(beam.elevation_rad, std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(beam.azimuth_rad, 1.4366075988424759, 1e-13);
  EXPECT_NEAR(beam.gain_db, 12.536467397843766, 1e-10);
}

TEST(BeamGeometryTest, QuarterSplitUsesUnitSine) {
  NetworkGeometry geometry;
  const BeamGeometry beam = MakeBeamGeometry(4, 1, geometry);
  EXPECT_NEAR(beam.GainLinear(), 4 * std::numbers::pi / std::sin(beam.azimuth_rad),
              1e-9);
}

TEST(BeamGeometryTest, WideSplitsStayFinite) {
  NetworkGeometry geometry;
  const double g1 = MakeBeamGeometry(1, 1, geometry).gain_db;
  const double g2 = MakeBeamGeometry(2, 1, geometry).gain_db;
  const double g4 = MakeBeamGeometry(4, 1, geometry).gain_db;
  EXPECT_TRUE(std::isfinite(g1));
  EXPECT_DOUBLE_EQ(g1, g2);
  EXPECT_LE(g2, g4);
}

TEST(BeamGeometryTest, GainGrowsWithHorizontalSplit) {
  NetworkGeometry geometry;
  double previous = MakeBeamGeometry(4, 2, geometry).gain_db;
  for (int n_h : {8, 16, 32, 64}) {
    const double gain = MakeBeamGeometry(n_h, 2, geometry).gain_db;
    EXPECT_GT(gain, previous) << n_h;
    previous = gain;
  }
}

TEST(BeamGeometryTest, RejectsEmptySplit) {
  NetworkGeometry geometry;
  EXPECT_THROW(MakeBeamGeometry(0, 1, geometry), DomainError);
  EXPECT_THROW(MakeBeamGeometry(4, 0, geometry), DomainError);
}

TEST(SplitScanAreasTest, CapsHorizontalAtSixteen) {
  EXPECT_EQ(SplitScanAreas(128), (std::pair{16, 8}));
  EXPECT_EQ(SplitScanAreas(8), (std::pair{8, 1}));
  EXPECT_EQ(SplitScanAreas(1), (std::pair{1, 1}));
}

TEST(DropUeTest, StaysInsideCell) {
  NetworkGeometry geometry;
  Rng rng(3);
  for (DropModel model : {DropModel::kAreaUniform, DropModel::kRadiusUniform}) {
    for (int i = 0; i < 10000; ++i) {
      const UeDrop drop = DropUe(geometry, model, rng);
      ASSERT_LE(drop.planar_radius_m, geometry.cell_radius_m);
      ASSERT_GE(drop.azimuth_rad, 0.0);
      ASSERT_LT(drop.azimuth_rad, 2 * std::numbers::pi);
      ASSERT_GE(drop.distance_m, 1.0);
      ASSERT_NEAR(drop.distance_m,
                  DistanceFromPlanar(drop.planar_radius_m, geometry), 1e-12);
    }
  }
}

TEST(DropUeTest, AreaUniformMedianRadius) {
  NetworkGeometry geometry;
  Rng rng(5);
  int inner = 0;
  constexpr int kDraws = 100000;
  const double half_area_radius = geometry.cell_radius_m / std::sqrt(2.0);
  for (int i = 0; i < kDraws; ++i) {
    inner += DropUe(geometry, DropModel::kAreaUniform, rng).planar_radius_m <
             half_area_radius;
  }
  EXPECT_NEAR(static_cast<double>(inner) / kDraws, 0.5, 0.01);
}

TEST(DropUeTest, RadiusUniformMedianRadius) {
  NetworkGeometry geometry;
  Rng rng(5);
  int inner = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    inner += DropUe(geometry, DropModel::kRadiusUniform, rng).planar_radius_m <
             geometry.cell_radius_m / 2;
  }
  EXPECT_NEAR(static_cast<double>(inner) / kDraws, 0.5, 0.01);
}

TEST(NetworkGeometryTest, RejectsApBelowUe) {
  NetworkGeometry geometry;
  geometry.ap_height_m = 1.0;
  EXPECT_THROW(geometry.Validate(), ConfigError);
}

TEST(ParseTest, RoundTripsNames) {
  for (LinkState s : {LinkState::kLos, LinkState::kNlos}) {
    EXPECT_EQ(ParseLinkState(LinkStateName(s)), s);
  }
  for (DropModel m : {DropModel::kAreaUniform, DropModel::kRadiusUniform}) {
    EXPECT_EQ(ParseDropModel(DropModelName(m)), m);
  }
  EXPECT_THROW(ParseDropModel("gaussian"), ConfigError);
}

TEST(RngTest, StreamsAreReproducibleAndDistinct) {
  Rng a = Rng::ForStream(42, 1, 2);
  Rng b = Rng::ForStream(42, 1, 2);
  Rng c = Rng::ForStream(42, 2, 1);
  const auto first = a();
  EXPECT_EQ(first, b());
  EXPECT_NE(first, c());
}

TEST(RngTest, UniformInUnitInterval) {
  Rng rng(9);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

}  // namespace
}  // namespace beamdisc
