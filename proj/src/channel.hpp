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
#include <string>
#include <vector>

#include "params.hpp"

namespace nomadbs {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

struct UserGeometry {
  std::vector<Point2D> users;
  std::vector<Point2D> rrhs;
};

/// Tapped-delay-line fading profile: nonnegative tap powers summing to one.
struct FadingProfile {
  std::vector<double> tap_delays_s;
  std::vector<double> tap_powers;
  double rms_delay_spread_s = 0.0;
};

/// Exponential power delay profile with `num_taps` taps whose realized rms
/// delay spread equals `rms_target_s` (decay constant found by bisection).
FadingProfile make_exponential_profile(int num_taps, double rms_target_s);

/// K x S x R amplitude gains plus the per-subcarrier noise power.
class ChannelTensor {
public:
  ChannelTensor() = default;
  ChannelTensor(int num_users, int num_subcarriers, int num_rrh, double noise_mw)
      : k_(num_users), s_(num_subcarriers), r_(num_rrh), noise_mw_(noise_mw),
        h_(static_cast<size_t>(num_users) * num_subcarriers * num_rrh, 0.0) {}

  int num_users() const { return k_; }
  int num_subcarriers() const { return s_; }
  int num_rrh() const { return r_; }
  double noise_mw() const { return noise_mw_; }

  double gain(int k, int n, int r) const { return h_[idx(k, n, r)]; }
  double gain_sq(int k, int n, int r) const {
    const double v = h_[idx(k, n, r)];
    return v * v;
  }
  void set_gain(int k, int n, int r, double amplitude) { h_[idx(k, n, r)] = amplitude; }

  /// View for centralized-deployment methods: keeps antenna 0 only.
  ChannelTensor restricted_to_first_rrh() const;

  const std::vector<double>& raw() const { return h_; }

private:
  size_t idx(int k, int n, int r) const {
    return (static_cast<size_t>(k) * s_ + n) * r_ + r;
  }

  int k_ = 0, s_ = 0, r_ = 0;
  double noise_mw_ = 0.0;
  std::vector<double> h_;
};

/// Antenna 0 at the cell center, the rest equally spaced on the ring of
/// radius rrh_ring_fraction * cell_radius starting at angle 0.
std::vector<Point2D> place_rrhs(const SystemParams& params);

/// K points uniform over the hexagon of circumradius cell_radius
/// (rejection sampling), one independent substream per (trial, user).
std::vector<Point2D> place_users(const SystemParams& params, uint64_t trial);

bool hexagon_contains(double x, double y, double circumradius);

UserGeometry make_geometry(const SystemParams& params, uint64_t trial);

/// Test hooks: production paths always use the defaults.
struct ChannelOptions {
  bool shadowing = true;
  bool fading = true;
  int num_taps = 8;
};

/// Squared amplitude is pathloss * shadowing * |frequency response|^2 with
/// pathloss 10^(ref_db/10) * (max(d, clamp)/cell_radius)^(-exponent),
/// lognormal shadowing, and the S-point response of the exponential-profile
/// tapped line (iid complex Gaussian taps per user/antenna pair).
ChannelTensor realize_channel(const SystemParams& params, const UserGeometry& geometry,
                              uint64_t trial, const ChannelOptions& options = {});

/// Convenience: geometry + tensor for one trial.
ChannelTensor realize_trial(const SystemParams& params, uint64_t trial,
                            const ChannelOptions& options = {});

/// CSV export with a replay header (K, S, R, seed, trial). One row per
/// (user, subcarrier, antenna) amplitude.
void dump_channel_csv(const ChannelTensor& tensor, const SystemParams& params,
                      uint64_t trial, const std::string& path);

} // namespace nomadbs
