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

#include "beamdisc/signaling.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "beamdisc/errors.h"

namespace beamdisc {
namespace {

double ToDb(double linear) { return 10.0 * std::log10(linear); }

// Acklam's rational approximation of the standard normal quantile, relative
// error about 1e-9. Used only as the starting point for Halley refinement.
double NormalQuantileSeed(double p) {
  static constexpr std::array<double, 6> a = {
      -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {
      -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {
      -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {
      7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - kLow) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

double NormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

std::string_view SchemeName(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kTd:
      return "TD";
    case SchemeKind::kFd:
      return "FD";
    case SchemeKind::kCd:
      return "CD";
    case SchemeKind::kSd:
      return "SD";
  }
  return "?";
}

SchemeKind ParseScheme(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  if (upper == "TD") return SchemeKind::kTd;
  if (upper == "FD") return SchemeKind::kFd;
  if (upper == "CD") return SchemeKind::kCd;
  if (upper == "SD") return SchemeKind::kSd;
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

double Scheme::MultiplexingGainDb() const { return ToDb(beams); }

void Scheme::Validate() const {
  if (beams < 1) throw ConfigError("number of simultaneous beams must be >= 1");
  if (kind == SchemeKind::kTd && beams != 1) {
    throw ConfigError("TD scans with a single beam (M = 1)");
  }
  if (!(inter_beam_interference_db >= 0.0)) {
    throw ConfigError("inter-beam interference must be >= 0 dB");
  }
  if (kind != SchemeKind::kSd && inter_beam_interference_db != 0.0) {
    throw ConfigError("inter-beam interference applies to SD only");
  }
}

void CodingConfig::Validate() const {
  if (!(payload_bits > 0.0)) throw ConfigError("payload must be > 0 bits");
  if (blocklength < 1) throw ConfigError("blocklength must be >= 1");
  if (!(block_error_rate > 0.0 && block_error_rate < 1.0)) {
    throw ConfigError("block error rate must lie in (0, 1)");
  }
}

SnrReport MakeSnrReport(double snr_db, const Scheme& scheme) {
  return {snr_db, std::pow(10.0, snr_db / 10.0), scheme};
}

SnrReport SnrTd(double tx_power_dbm, double gain_db, double pathloss_db,
                double noise_density_dbm_hz, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be > 0");
  const double noise_dbm = noise_density_dbm_hz + ToDb(bandwidth_hz);
  return MakeSnrReport(tx_power_dbm + gain_db - pathloss_db - noise_dbm,
                       Scheme::Td());
}

SnrReport SnrForScheme(const Scheme& scheme, double tx_power_dbm,
                       double gain_db, double pathloss_db,
                       double noise_density_dbm_hz, double bandwidth_hz) {
  scheme.Validate();
  const double td =
      SnrTd(tx_power_dbm, gain_db, pathloss_db, noise_density_dbm_hz,
            bandwidth_hz)
          .snr_db;
  const double m_db = scheme.MultiplexingGainDb();
  double snr_db = td;
  switch (scheme.kind) {
    case SchemeKind::kTd:
      break;
    case SchemeKind::kFd: {
      // Power and noise bandwidth both split M ways.
      const double power_split = -m_db;
      const double noise_split = -m_db;
      snr_db = td + (power_split - noise_split);
      break;
    }
    case SchemeKind::kCd: {
      const double power_split = -m_db;
      const double spreading_gain = m_db;
      snr_db = td + (power_split + spreading_gain);
      break;
    }
    case SchemeKind::kSd:
      // A lone beam has no neighbour to leak into.
      snr_db = td - m_db -
               (scheme.beams > 1 ? scheme.inter_beam_interference_db : 0.0);
      break;
  }
  return MakeSnrReport(snr_db, scheme);
}

double QFunction(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double InverseQ(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("InverseQ needs 0 < p < 1");
  }
  if (p == 0.5) return 0.0;
  // Refine on the side where erfc is evaluated without cancellation.
  if (p > 0.5) return -InverseQ(1.0 - p);
  double x = -NormalQuantileSeed(p);
  for (int iter = 0; iter < 3; ++iter) {
    const double r = (QFunction(x) - p) / NormalPdf(x);
    x += r / (1.0 - 0.5 * x * r);
  }
  return x;
}

double FiniteBlocklengthRate(double snr_linear, const CodingConfig& coding) {
  const double scale = coding.complex_awgn ? 1.0 : 0.5;
  const double n = coding.blocklength;
  const double log2e = std::numbers::log2e;
  const double capacity = scale * std::log2(1.0 + snr_linear);
  const double dispersion = scale * snr_linear * (snr_linear + 2.0) /
                            ((snr_linear + 1.0) * (snr_linear + 1.0)) * log2e *
                            log2e;
  return capacity -
         std::sqrt(dispersion / n) * InverseQ(coding.block_error_rate) +
         std::log2(n) / (2.0 * n);
}

double BeamDuration(const SnrReport& snr, const CodingConfig& coding,
                    double bandwidth_hz) {
  coding.Validate();
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be > 0");
  const double rate = FiniteBlocklengthRate(snr.snr_linear, coding);
  // As SNR -> 0 the log2(n)/(2n) term keeps the rate above zero, which would
  // make every link look feasible. Feasibility is judged without it.
  const double n = coding.blocklength;
  if (!(rate - std::log2(n) / (2.0 * n) > 0.0)) {
    throw LinkBudgetError("SNR too low for payload: " +
                          std::to_string(snr.snr_db) + " dB");
  }
  return coding.payload_bits / (bandwidth_hz * rate);
}

double SchemeBeamDuration(const Scheme& scheme, double t_td,
                          std::optional<double> t_sd) {
  if (!(t_td > 0.0)) throw DomainError("TD beam duration must be > 0");
  switch (scheme.kind) {
    case SchemeKind::kTd:
      return t_td;
    case SchemeKind::kFd:
    case SchemeKind::kCd:
      return scheme.beams * t_td;
    case SchemeKind::kSd:
      if (!t_sd) throw DomainError("SD needs its own beam duration");
      if (*t_sd < t_td) {
        throw ConsistencyError("SD beam duration below the TD duration");
      }
      return *t_sd;
  }
  return t_td;
}

SchemeDurations ComputeSchemeDurations(const Scheme& scheme,
                                       double tx_power_dbm, double gain_db,
                                       double pathloss_db,
                                       double noise_density_dbm_hz,
                                       double bandwidth_hz,
                                       const CodingConfig& coding) {
  SchemeDurations out;
  out.td_snr = SnrTd(tx_power_dbm, gain_db, pathloss_db, noise_density_dbm_hz,
                     bandwidth_hz);
  out.scheme_snr = SnrForScheme(scheme, tx_power_dbm, gain_db, pathloss_db,
                                noise_density_dbm_hz, bandwidth_hz);
  out.td_s = BeamDuration(out.td_snr, coding, bandwidth_hz);
  if (scheme.kind == SchemeKind::kSd) {
    out.sd_s = BeamDuration(out.scheme_snr, coding, bandwidth_hz);
  }
  out.scheme_s = SchemeBeamDuration(scheme, out.td_s, out.sd_s);
  return out;
}

}  // namespace beamdisc
