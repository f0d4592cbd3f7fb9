// nomadbs - transmit-power minimization for downlink NOMA over distributed antennas
// Copyright (C) 2026 the nomadbs developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nomadbs {

enum class ConfigErrorCode {
  NonPositiveUsers,
  TooFewSubcarriers,
  NonPositiveRrh,
  NonPositiveBandwidth,
  NonPositiveNoise,
  NegativeRate,
  InvalidFtpaAlpha,
  NegativeThreshold,
  NegativeMargin,
  NonPositiveCellRadius,
  NegativeRingFraction,
  NonPositiveExponent,
  NegativeShadowing,
  NegativeDelaySpread,
  NonPositiveClamp,
  NonPositiveTrials,
  UnknownKey,
  BadValue,
  IoFailure,
};

const char* config_error_name(ConfigErrorCode code);

class ConfigError : public std::runtime_error {
public:
  ConfigError(ConfigErrorCode code, std::string field, const std::string& detail)
      : std::runtime_error(std::string(config_error_name(code)) + ": " + field +
                           (detail.empty() ? "" : " (" + detail + ")")),
        code_(code), field_(std::move(field)) {}

  ConfigErrorCode code() const { return code_; }
  const std::string& field() const { return field_; }

private:
  ConfigErrorCode code_;
  std::string field_;
};

/// All scalar system knobs. Defaults follow the usual macro-cell evaluation
/// setup: hexagonal cell of 500 m, 10 MHz split into 64 subcarriers, 4 RRHs
/// (one central, the rest on a ring at 2/3 of the cell radius).
struct SystemParams {
  int num_users = 15;             // K
  int num_subcarriers = 64;       // S
  int num_rrh = 4;                // R
  double bandwidth = 10e6;        // B, Hz
  double noise_psd = 4e-18;       // N0, mW/Hz
  double rate_req = 9e6;          // per-user target rate, bit/s
  double ftpa_alpha = 0.5;        // FTPA decay exponent
  double power_threshold = 0.01;  // rho, W: minimum per-step power decrease
  double safety_margin = 0.01;    // mu: SIC decoding power margin
  double cell_radius = 500.0;     // m (hexagon circumradius)
  double rrh_ring_fraction = 2.0 / 3.0;
  double pathloss_exponent = 3.76;
  double pathloss_ref_db = -116.78; // path gain at d = cell_radius, dB
  double shadowing_sigma = 8.0;     // dB (standard deviation)
  double rms_delay_spread = 500e-9; // s
  double min_distance_clamp = 10.0; // m
  int trials = 500;
  uint64_t seed = 1;

  /// Per-subcarrier noise power, mW. Single source of truth: N0 * B / S.
  double noise_per_subcarrier_mw() const {
    return noise_psd * bandwidth / static_cast<double>(num_subcarriers);
  }

  /// Rate target expressed in bits per channel use aggregated over a set
  /// of subcarriers: R * S / B.
  double rate_norm() const {
    return rate_req * static_cast<double>(num_subcarriers) / bandwidth;
  }

  double power_threshold_mw() const { return power_threshold * 1000.0; }
};

/// Checks every invariant and throws ConfigError with the offending field.
/// Returns the params unchanged on success.
SystemParams validate_config(const SystemParams& params);

/// Parses a JSON object with exactly the SystemParams key names. Unknown
/// keys are rejected; missing keys fall back to defaults. Validates.
SystemParams params_from_json_text(const std::string& json_text);
SystemParams params_from_json_file(const std::string& path);

std::string params_to_json_text(const SystemParams& params);

} // namespace nomadbs
