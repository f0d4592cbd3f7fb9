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

#include "channel.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "rng.hpp"

namespace nomadbs {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Substream purposes; fixed so streams never collide across uses.
enum : uint64_t { kPurposePosition = 1, kPurposeShadowing = 2, kPurposeFading = 3 };

double profile_rms(const std::vector<double>& delays, const std::vector<double>& powers) {
  double m1 = 0.0, m2 = 0.0;
  for (size_t i = 0; i < delays.size(); ++i) {
    m1 += powers[i] * delays[i];
    m2 += powers[i] * delays[i] * delays[i];
  }
  return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

} // namespace

FadingProfile make_exponential_profile(int num_taps, double rms_target_s) {
  if (num_taps < 1) throw std::invalid_argument("num_taps must be >= 1");
  FadingProfile profile;
  profile.tap_delays_s.resize(num_taps);
  profile.tap_powers.resize(num_taps);
  if (num_taps == 1 || rms_target_s <= 0.0) {
    profile.tap_delays_s.assign(num_taps, 0.0);
    profile.tap_powers.assign(num_taps, 0.0);
    profile.tap_delays_s[0] = 0.0;
    profile.tap_powers[0] = 1.0;
    profile.rms_delay_spread_s = 0.0;
    return profile;
  }

  // Tap spacing sized so the uniform-power limit overshoots the target rms;
  // the decay constant is then bisected to land exactly on it.
  const double uniform_rms_factor =
      std::sqrt((static_cast<double>(num_taps) * num_taps - 1.0) / 12.0);
  const double spacing = 1.2 * rms_target_s / uniform_rms_factor;
  for (int l = 0; l < num_taps; ++l) profile.tap_delays_s[l] = l * spacing;

  auto rms_for_decay = [&](double decay) {
    std::vector<double> p(num_taps);
    double sum = 0.0;
    for (int l = 0; l < num_taps; ++l) {
      p[l] = std::exp(-profile.tap_delays_s[l] / decay);
      sum += p[l];
    }
    for (auto& v : p) v /= sum;
    return profile_rms(profile.tap_delays_s, p);
  };

  double lo = 1e-12, hi = 1e6 * rms_target_s;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rms_for_decay(mid) < rms_target_s)
      lo = mid;
    else
      hi = mid;
  }
  const double decay = 0.5 * (lo + hi);
  double sum = 0.0;
  for (int l = 0; l < num_taps; ++l) {
    profile.tap_powers[l] = std::exp(-profile.tap_delays_s[l] / decay);
    sum += profile.tap_powers[l];
  }
  for (auto& v : profile.tap_powers) v /= sum;
  profile.rms_delay_spread_s = profile_rms(profile.tap_delays_s, profile.tap_powers);
  return profile;
}

ChannelTensor ChannelTensor::restricted_to_first_rrh() const {
  ChannelTensor out(k_, s_, 1, noise_mw_);
  for (int k = 0; k < k_; ++k)
    for (int n = 0; n < s_; ++n)
      out.set_gain(k, n, 0, gain(k, n, 0));
  return out;
}

std::vector<Point2D> place_rrhs(const SystemParams& params) {
  std::vector<Point2D> rrhs;
  rrhs.reserve(params.num_rrh);
  rrhs.push_back({0.0, 0.0});
  const int ring = params.num_rrh - 1;
  const double radius = params.rrh_ring_fraction * params.cell_radius;
  for (int j = 0; j < ring; ++j) {
    const double angle = 2.0 * kPi * j / ring;
    rrhs.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  return rrhs;
}

bool hexagon_contains(double x, double y, double circumradius) {
  // Vertices at angles 0, 60, ..., 300 degrees.
  const double sqrt3 = 1.7320508075688772;
  const double ax = std::fabs(x), ay = std::fabs(y);
  if (ax > circumradius) return false;
  if (ay > 0.5 * sqrt3 * circumradius) return false;
  return sqrt3 * ax + ay <= sqrt3 * circumradius + 1e-12 * circumradius;
}

std::vector<Point2D> place_users(const SystemParams& params, uint64_t trial) {
  std::vector<Point2D> users;
  users.reserve(params.num_users);
  const double rd = params.cell_radius;
  const double half_height = 0.5 * 1.7320508075688772 * rd;
  for (int k = 0; k < params.num_users; ++k) {
    Rng rng(mix_seed({params.seed, trial, static_cast<uint64_t>(k), kPurposePosition}));
    double x = 0.0, y = 0.0;
    do {
      x = rng.uniform(-rd, rd);
      y = rng.uniform(-half_height, half_height);
    } while (!hexagon_contains(x, y, rd));
    users.push_back({x, y});
  }
  return users;
}

UserGeometry make_geometry(const SystemParams& params, uint64_t trial) {
  return {place_users(params, trial), place_rrhs(params)};
}

ChannelTensor realize_channel(const SystemParams& params, const UserGeometry& geometry,
                              uint64_t trial, const ChannelOptions& options) {
  const int K = params.num_users;
  const int S = params.num_subcarriers;
  const int R = params.num_rrh;
  if (static_cast<int>(geometry.users.size()) != K ||
      static_cast<int>(geometry.rrhs.size()) != R)
    throw std::invalid_argument("geometry does not match params");

  ChannelTensor tensor(K, S, R, params.noise_per_subcarrier_mw());
  const FadingProfile profile =
      options.fading ? make_exponential_profile(options.num_taps, params.rms_delay_spread)
                     : FadingProfile{{0.0}, {1.0}, 0.0};
  const int taps = static_cast<int>(profile.tap_powers.size());
  const double subcarrier_hz = params.bandwidth / S;
  const double ref_lin = std::pow(10.0, params.pathloss_ref_db / 10.0);

  std::vector<std::complex<double>> tap_gains(taps);
  for (int k = 0; k < K; ++k) {
    for (int r = 0; r < R; ++r) {
      const double dx = geometry.users[k].x - geometry.rrhs[r].x;
      const double dy = geometry.users[k].y - geometry.rrhs[r].y;
      const double dist = std::max(std::hypot(dx, dy), params.min_distance_clamp);
      const double pathloss =
          ref_lin * std::pow(dist / params.cell_radius, -params.pathloss_exponent);

      Rng rng(mix_seed({params.seed, trial, static_cast<uint64_t>(k),
                        static_cast<uint64_t>(r), kPurposeShadowing}));
      double shadowing = 1.0;
      if (options.shadowing)
        shadowing = std::pow(10.0, params.shadowing_sigma * rng.normal() / 10.0);

      Rng fade_rng(mix_seed({params.seed, trial, static_cast<uint64_t>(k),
                             static_cast<uint64_t>(r), kPurposeFading}));
      if (options.fading) {
        for (int l = 0; l < taps; ++l) {
          auto [a, b] = fade_rng.normal_pair();
          const double scale = std::sqrt(0.5 * profile.tap_powers[l]);
          tap_gains[l] = {scale * a, scale * b};
        }
      } else {
        for (int l = 0; l < taps; ++l) tap_gains[l] = {l == 0 ? 1.0 : 0.0, 0.0};
      }

      const double base = pathloss * shadowing;
      for (int n = 0; n < S; ++n) {
        std::complex<double> f{0.0, 0.0};
        const double freq = n * subcarrier_hz;
        for (int l = 0; l < taps; ++l) {
          const double phase = -2.0 * kPi * freq * profile.tap_delays_s[l];
          f += tap_gains[l] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        double g2 = base * std::norm(f);
        if (g2 < 1e-150) g2 = 1e-150; // keep gains strictly positive
        tensor.set_gain(k, n, r, std::sqrt(g2));
      }
    }
  }
  return tensor;
}

ChannelTensor realize_trial(const SystemParams& params, uint64_t trial,
                            const ChannelOptions& options) {
  return realize_channel(params, make_geometry(params, trial), trial, options);
}

void dump_channel_csv(const ChannelTensor& tensor, const SystemParams& params,
                      uint64_t trial, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "# nomadbs channel dump\n");
  std::fprintf(f, "# K=%d S=%d R=%d seed=%llu trial=%llu noise_mw=%.17g\n",
               tensor.num_users(), tensor.num_subcarriers(), tensor.num_rrh(),
               static_cast<unsigned long long>(params.seed),
               static_cast<unsigned long long>(trial), tensor.noise_mw());
  std::fprintf(f, "user,subcarrier,rrh,amplitude\n");
  for (int k = 0; k < tensor.num_users(); ++k)
    for (int n = 0; n < tensor.num_subcarriers(); ++n)
      for (int r = 0; r < tensor.num_rrh(); ++r)
        std::fprintf(f, "%d,%d,%d,%.17g\n", k, n, r, tensor.gain(k, n, r));
  std::fclose(f);
}

} // namespace nomadbs
