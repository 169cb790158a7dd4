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

#ifndef BEAMDISC_SIGNALING_H_
#define BEAMDISC_SIGNALING_H_

#include <optional>
#include <string_view>

namespace beamdisc {

enum class SchemeKind { kTd, kFd, kCd, kSd };

std::string_view SchemeName(SchemeKind kind);
// "TD", "FD", "CD", "SD" (case-insensitive). Throws ConfigError.
SchemeKind ParseScheme(std::string_view name);

// Broadcast signaling scheme with its number of simultaneous beams.
struct Scheme {
  SchemeKind kind = SchemeKind::kTd;
  int beams = 1;
  // Inter-beam interference margin, SD only.
  double inter_beam_interference_db = 0.0;

  static Scheme Td() { return {SchemeKind::kTd, 1, 0.0}; }
  static Scheme Fd(int beams) { return {SchemeKind::kFd, beams, 0.0}; }
  static Scheme Cd(int beams) { return {SchemeKind::kCd, beams, 0.0}; }
  static Scheme Sd(int beams, double interference_db) {
    return {SchemeKind::kSd, beams, interference_db};
  }

  double MultiplexingGainDb() const;

  // TD needs M = 1 and only SD carries interference. Throws ConfigError.
  void Validate() const;
};

struct CodingConfig {
  double payload_bits = 128.0;
  int blocklength = 1000;
  double block_error_rate = 1e-3;
  // Drops the 1/2 in capacity and dispersion (complex baseband).
  bool complex_awgn = false;

  void Validate() const;
};

struct SnrReport {
  double snr_db = 0.0;
  double snr_linear = 1.0;
  Scheme scheme;
};

SnrReport MakeSnrReport(double snr_db, const Scheme& scheme);

// P + G - L - (eta + 10 log10 B). The bandwidth term turns the noise density
// into noise power.
SnrReport SnrTd(double tx_power_dbm, double gain_db, double pathloss_db,
                double noise_density_dbm_hz, double bandwidth_hz);

// Per-beam SNR of any scheme. FD and CD reproduce the TD value bit for bit:
// their power split is offset exactly by the narrower noise bandwidth (FD) or
// the spreading gain SG = M_dB (CD). SD loses M_dB and, for M > 1, the
// interference margin.
SnrReport SnrForScheme(const Scheme& scheme, double tx_power_dbm,
                       double gain_db, double pathloss_db,
                       double noise_density_dbm_hz, double bandwidth_hz);

// Complementary standard normal CDF.
double QFunction(double x);

// x with Q(x) = p. Throws DomainError unless 0 < p < 1.
double InverseQ(double p);

// Normal-approximation rate C - sqrt(V/n) Qinv(eps) + log2(n)/(2n) in bits
// per channel use. May be negative.
double FiniteBlocklengthRate(double snr_linear, const CodingConfig& coding);

// U / (B * rate). Throws LinkBudgetError unless C - sqrt(V/n) Qinv(eps) is
// positive.
double BeamDuration(const SnrReport& snr, const CodingConfig& coding,
                    double bandwidth_hz);

// TD -> t_td, FD/CD -> M t_td, SD -> t_sd (required, and must not undercut
// t_td). Throws ConsistencyError if t_sd < t_td.
double SchemeBeamDuration(const Scheme& scheme, double t_td,
                          std::optional<double> t_sd);

// Beam durations of one link under `scheme`.
struct SchemeDurations {
  double td_s = 0.0;
  // Only set for SD.
  std::optional<double> sd_s;
  double scheme_s = 0.0;
  SnrReport td_snr;
  SnrReport scheme_snr;
};

SchemeDurations ComputeSchemeDurations(const Scheme& scheme,
                                       double tx_power_dbm, double gain_db,
                                       double pathloss_db,
                                       double noise_density_dbm_hz,
                                       double bandwidth_hz,
                                       const CodingConfig& coding);

}  // namespace beamdisc

#endif  // BEAMDISC_SIGNALING_H_
