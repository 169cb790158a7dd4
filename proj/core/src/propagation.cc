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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "beamdisc/errors.h"

namespace beamdisc {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

void NetworkGeometry::Validate() const {
  if (!(cell_radius_m > 0.0)) throw ConfigError("cell radius must be > 0");
  if (!(ue_height_m >= 0.0)) throw ConfigError("UE height must be >= 0");
  if (!(ap_height_m > ue_height_m)) {
    throw ConfigError("AP height must exceed UE height");
  }
  if (!(los_d1_m > 0.0) || !(los_d2_m > 0.0)) {
    throw ConfigError("LOS model parameters d1, d2 must be > 0");
  }
}

void LinkBudget::Validate() const {
  if (!(carrier_hz > 0.0)) throw ConfigError("carrier frequency must be > 0");
  if (!(bandwidth_hz > 0.0)) throw ConfigError("bandwidth must be > 0");
  if (!(pathloss_exponent_los >= 1.0) || !(pathloss_exponent_nlos >= 1.0)) {
    throw ConfigError("path-loss exponents must be >= 1");
  }
  if (!(shadowing_std_los_db >= 0.0) || !(shadowing_std_nlos_db >= 0.0)) {
    throw ConfigError("shadowing spreads must be >= 0");
  }
}

std::string_view LinkStateName(LinkState state) {
  return state == LinkState::kLos ? "LOS" : "NLOS";
}

LinkState ParseLinkState(std::string_view name) {
  const std::string lower = Lower(name);
  if (lower == "los") return LinkState::kLos;
  if (lower == "nlos") return LinkState::kNlos;
  throw ConfigError("unknown link state '" + std::string(name) + "'");
}

double BeamGeometry::GainLinear() const { return std::pow(10.0, gain_db / 10.0); }

double LosProbability(double distance_m, const NetworkGeometry& geometry) {
  if (!(distance_m > 0.0)) {
    throw DomainError("LOS probability needs a positive distance");
  }
  const double decay = std::exp(-distance_m / geometry.los_d2_m);
  const double near = std::min(geometry.los_d1_m / distance_m, 1.0);
  return near * (1.0 - decay) + decay;
}

LinkState SampleLinkState(double distance_m, const NetworkGeometry& geometry,
                          Rng& rng) {
  const double p = LosProbability(distance_m, geometry);
  return rng.Uniform() < p ? LinkState::kLos : LinkState::kNlos;
}

double PathLossDb(double distance_m, LinkState state, const LinkBudget& budget,
                  double shadowing_db) {
  if (!(distance_m >= 1.0)) {
    throw DomainError("path loss is defined from the 1 m reference distance");
  }
  const double exponent = state == LinkState::kLos
                              ? budget.pathloss_exponent_los
                              : budget.pathloss_exponent_nlos;
  const double free_space_1m = 20.0 * std::log10(4.0 * std::numbers::pi *
                                                 budget.carrier_hz /
                                                 LinkBudget::kSpeedOfLight);
  return free_space_1m + 10.0 * exponent * std::log10(distance_m) +
         shadowing_db;
}

double SampleShadowingDb(LinkState state, const LinkBudget& budget, Rng& rng) {
  const double sigma = state == LinkState::kLos ? budget.shadowing_std_los_db
                                                : budget.shadowing_std_nlos_db;
  if (sigma == 0.0) return 0.0;
  std::normal_distribution<double> gauss(0.0, sigma);
  return gauss(rng);
}

BeamGeometry MakeBeamGeometry(int n_horizontal, int n_vertical,
                              const NetworkGeometry& geometry) {
  if (n_horizontal < 1 || n_vertical < 1) {
    throw DomainError("scan-area counts must be >= 1");
  }
  if (!(geometry.ap_height_m > geometry.ue_height_m)) {
    throw DomainError("AP height must exceed UE height");
  }
  BeamGeometry beam;
  beam.n_horizontal = n_horizontal;
  beam.n_vertical = n_vertical;
  beam.elevation_rad = 2.0 * std::numbers::pi / n_horizontal;
  beam.azimuth_rad =
      std::atan(geometry.cell_radius_m /
                (geometry.ap_height_m - geometry.ue_height_m)) /
      n_vertical;
  // Quasi-omni horizontally for N_H <= 2.
  const double sin_h = n_horizontal <= 2 ? 1.0 : std::sin(beam.elevation_rad);
  const double sin_v = std::sin(beam.azimuth_rad);
  beam.gain_db = 10.0 * std::log10(4.0 * std::numbers::pi / (sin_h * sin_v));
  beam.side_h_m = geometry.cell_radius_m * sin_h;
  beam.side_v_m = geometry.cell_radius_m * sin_v;
  return beam;
}

std::pair<int, int> SplitScanAreas(int scan_areas) {
  if (scan_areas < 1) throw ConfigError("N must be >= 1");
  constexpr int kMaxHorizontal = 16;
  int horizontal = std::min(scan_areas, kMaxHorizontal);
  while (scan_areas % horizontal != 0) --horizontal;
  return {horizontal, scan_areas / horizontal};
}

std::string_view DropModelName(DropModel model) {
  return model == DropModel::kAreaUniform ? "area" : "radius";
}

DropModel ParseDropModel(std::string_view name) {
  const std::string lower = Lower(name);
  if (lower == "area") return DropModel::kAreaUniform;
  if (lower == "radius") return DropModel::kRadiusUniform;
  throw ConfigError("unknown drop model '" + std::string(name) + "'");
}

double DistanceFromPlanar(double planar_radius_m,
                          const NetworkGeometry& geometry) {
  const double dh = geometry.ap_height_m - geometry.ue_height_m;
  return std::hypot(planar_radius_m, dh);
}

UeDrop DropUe(const NetworkGeometry& geometry, DropModel model, Rng& rng) {
  UeDrop drop;
  const double u = rng.Uniform();
  drop.planar_radius_m = model == DropModel::kAreaUniform
                             ? geometry.cell_radius_m * std::sqrt(u)
                             : geometry.cell_radius_m * u;
  drop.azimuth_rad = 2.0 * std::numbers::pi * rng.Uniform();
  drop.distance_m = DistanceFromPlanar(drop.planar_radius_m, geometry);
  drop.depression_rad = std::atan2(drop.planar_radius_m,
                                   geometry.ap_height_m - geometry.ue_height_m);
  return drop;
}

}  // namespace beamdisc
