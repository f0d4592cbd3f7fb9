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

#include <cmath>
#include <stdexcept>
#include <utility>

namespace nomadbs {

/// Shannon rate of an interference-free link, bit/s. `sc_bw_hz` is the
/// per-subcarrier bandwidth B/S.
inline double rate_single(double p_mw, double gain_sq, double noise_mw, double sc_bw_hz) {
  return sc_bw_hz * std::log2(1.0 + p_mw * gain_sq / noise_mw);
}

/// Rate of the weaker (second) user under the first user's interference.
inline double rate_second(double p2_mw, double p1_mw, double gain2_sq, double noise_mw,
                          double sc_bw_hz) {
  return sc_bw_hz * std::log2(1.0 + p2_mw * gain2_sq / (p1_mw * gain2_sq + noise_mw));
}

/// Fractional transmit power allocation: the weaker user's power scales
/// from the first user's by the gain ratio to the alpha power.
inline double ftpa_power(double p1_mw, double gain1_sq, double gain2_sq, double alpha) {
  return p1_mw * std::pow(gain1_sq / gain2_sq, alpha);
}

/// Two users collocated on one subcarrier, each powered by its own antenna.
struct PairLink {
  double g2_k1_r1 = 0.0;  // squared gains
  double g2_k1_r2 = 0.0;
  double g2_k2_r1 = 0.0;
  double g2_k2_r2 = 0.0;
  double noise_mw = 0.0;
  double p1_mw = 0.0;
  double p2_mw = 0.0;
  int r1 = 0;
  int r2 = 1;
};

/// Both users can cancel each other iff the cross gains dominate:
/// h_k1,r2 >= h_k2,r2 and h_k2,r1 >= h_k1,r1 (non-strict). Throws on
/// r1 == r2, where only one side can ever cancel.
inline bool mutual_sic_feasible(const PairLink& link) {
  if (link.r1 == link.r2)
    throw std::invalid_argument("mutual_sic_feasible: users share the powering antenna");
  return link.g2_k1_r2 >= link.g2_k2_r2 && link.g2_k2_r1 >= link.g2_k1_r1;
}

/// Admissible p2/p1 ratio band for a mutual-SIC pair. The band is nonempty
/// whenever mutual_sic_feasible holds.
inline std::pair<double, double> mux_ratio_bounds(const PairLink& link) {
  return {link.g2_k1_r1 / link.g2_k1_r2, link.g2_k2_r1 / link.g2_k2_r2};
}

/// Dual-antenna pair where only the first user cancels: both power
/// conditions must hold for decodability at both receivers.
inline bool single_sic_drrh_ok(const PairLink& link) {
  return link.p1_mw * link.g2_k1_r1 <= link.p2_mw * link.g2_k1_r2 &&
         link.p2_mw * link.g2_k2_r2 >= link.p1_mw * link.g2_k2_r1;
}

/// Same-antenna pairing power gap: p2 >= p1 (1 + mu).
inline bool sic_margin_ok(double p1_mw, double p2_mw, double mu) {
  return p2_mw >= p1_mw * (1.0 + mu);
}

/// Exact decoding-rate surpluses of a mutual-SIC pair, including the cross
/// term that the feasibility conditions neglect. Sign-exact: evaluated as
/// products, no logs. First element: surplus of user 1 decoding user 2;
/// second: of user 2 decoding user 1. Nonnegative values mean the exact
/// SIC condition holds.
inline std::pair<double, double> mutual_sic_exact_surpluses(const PairLink& link) {
  const double s2 = link.noise_mw;
  const double cross = link.p1_mw * link.p2_mw * link.g2_k1_r1 * link.g2_k2_r2;
  const double s_k1 = s2 * link.p2_mw * (link.g2_k1_r2 - link.g2_k2_r2) - cross;
  const double s_k2 = s2 * link.p1_mw * (link.g2_k2_r1 - link.g2_k1_r1) - cross;
  return {s_k1, s_k2};
}

/// Rate surplus available to the stronger user of a same-antenna pair for
/// decoding the weaker user's signal, bit/s (>= 0 when gains are ordered).
inline double srrh_decode_surplus(double p1_mw, double p2_mw, double g2_k1, double g2_k2,
                                  double noise_mw, double sc_bw_hz) {
  const double needed =
      sc_bw_hz * std::log2(1.0 + p2_mw * g2_k1 / (p1_mw * g2_k1 + noise_mw));
  return needed - rate_second(p2_mw, p1_mw, g2_k2, noise_mw, sc_bw_hz);
}

} // namespace nomadbs
