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

#ifndef BEAMDISC_PROPAGATION_H_
#define BEAMDISC_PROPAGATION_H_

#include <string_view>
#include <utility>

#include "beamdisc/rng.h"

namespace beamdisc {

// Single-cell deployment and the parameters of the d1/d2 LOS model.
struct NetworkGeometry {
  double cell_radius_m = 100.0;
  double ap_height_m = 15.0;
  double ue_height_m = 1.5;
  double los_d1_m = 20.0;
  double los_d2_m = 39.0;

  // Throws ConfigError.
  void Validate() const;
};

struct LinkBudget {
  static constexpr double kSpeedOfLight = 3e8;

  double carrier_hz = 28e9;
  double bandwidth_hz = 1e9;
  double tx_power_dbm = 30.0;
  double noise_density_dbm_hz = -174.0;
  double pathloss_exponent_los = 2.1;
  double pathloss_exponent_nlos = 3.17;
  double shadowing_std_los_db = 3.76;
  double shadowing_std_nlos_db = 8.09;

  // Throws ConfigError.
  void Validate() const;
};

enum class LinkState { kLos, kNlos };

std::string_view LinkStateName(LinkState state);
// Accepts "LOS"/"NLOS" (case-insensitive). Throws ConfigError.
LinkState ParseLinkState(std::string_view name);

// Sectorized beam of one scan area. `elevation_rad` is the horizontal sweep
// angle 2*pi/N_H and `azimuth_rad` the vertical one. The names are swapped
// relative to the usual spherical convention on purpose.
struct BeamGeometry {
  int n_horizontal = 1;
  int n_vertical = 1;
  double elevation_rad = 0.0;
  double azimuth_rad = 0.0;
  double gain_db = 0.0;
  // Rectangle sides at the cell radius. Diagnostic only.
  double side_h_m = 0.0;
  double side_v_m = 0.0;

  double GainLinear() const;
};

// p(d) = min(d1/d, 1) (1 - exp(-d/d2)) + exp(-d/d2). Throws DomainError for
// d <= 0.
double LosProbability(double distance_m, const NetworkGeometry& geometry);

LinkState SampleLinkState(double distance_m, const NetworkGeometry& geometry,
                          Rng& rng);

// Free-space loss at 1 m plus 10 n log10(d) plus the realized shadowing.
// Throws DomainError for d < 1 m.
double PathLossDb(double distance_m, LinkState state, const LinkBudget& budget,
                  double shadowing_db);

// Zero-mean Gaussian with the state's standard deviation.
double SampleShadowingDb(LinkState state, const LinkBudget& budget, Rng& rng);

// theta = 2 pi / N_H, phi = arctan(r / (h_AP - h_UE)) / N_V and
// G = 4 pi / (sin theta sin phi). For N_H <= 2 the horizontal factor is taken
// as sin theta = 1, since the rectangle approximation breaks down past a
// hemisphere.
BeamGeometry MakeBeamGeometry(int n_horizontal, int n_vertical,
                              const NetworkGeometry& geometry);

// Default factorization N = N_H * N_V used when a configuration only gives N:
// fill the horizontal dimension first, up to 16 areas.
std::pair<int, int> SplitScanAreas(int scan_areas);

enum class DropModel { kAreaUniform, kRadiusUniform };

std::string_view DropModelName(DropModel model);
DropModel ParseDropModel(std::string_view name);

struct UeDrop {
  double planar_radius_m = 0.0;
  double azimuth_rad = 0.0;
  // 3-D AP-to-UE distance.
  double distance_m = 0.0;
  // Angle of the AP-to-UE ray from the vertical.
  double depression_rad = 0.0;
};

UeDrop DropUe(const NetworkGeometry& geometry, DropModel model, Rng& rng);

// sqrt(planar^2 + (h_AP - h_UE)^2).
double DistanceFromPlanar(double planar_radius_m,
                          const NetworkGeometry& geometry);

}  // namespace beamdisc

#endif  // BEAMDISC_PROPAGATION_H_
