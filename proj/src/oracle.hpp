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

// Reference implementations used only by tests and acceptance reruns.
// They deliberately share no code with the production paths they check:
// the waterline comes from plain bisection, optima from grid search, and
// the small-instance allocator from full enumeration.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "params.hpp"

namespace nomadbs {

struct DichotomyResult {
  double waterline_mw = 0.0;
  double total_power_mw = 0.0;
  int active_count = 0;
};

/// Bisection waterfilling over a gain set (1/mW) with negative-power
/// exclusion at every probe; converges to 1e-12 relative on the rate.
DichotomyResult dichotomy_waterfill(const std::vector<double>& gains_norm,
                                    double rate_norm);

struct GridMin1D {
  double x = 0.0;
  double value = 0.0;
};

/// Exhaustive evaluation on a linear grid, then one refinement pass around
/// the coarse argmin so discretization error sits well below test
/// tolerances.
GridMin1D grid_min_1d(const std::function<double(double)>& f, double lo, double hi,
                      int points, int refine_rounds = 2);

struct GridMin2D {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Same over a box, with x sampled geometrically and y linearly.
GridMin2D grid_min_2d(const std::function<double(double, double)>& f, double x_lo,
                      double x_hi, double y_lo, double y_hi, int points_x, int points_y,
                      int refine_rounds = 2);

struct ExhaustiveResult {
  bool ok = false;        // false: instance exceeds the enumeration bound
  double min_power_mw = 0.0;
};

/// Global minimum total power over every user/subcarrier/antenna assignment
/// with one user per subcarrier, optimal per-user waterfilling. Bounds:
/// K <= 3, S <= 6, R <= 2.
ExhaustiveResult exhaustive_small_alloc(const ChannelTensor& channel,
                                        const SystemParams& params);

/// Batch comparisons between production results and the oracles above,
/// runnable from the test suites and the hidden CLI subcommand.
struct OracleBatchReport {
  std::string name;
  int count = 0;
  bool pass = false;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  std::string details;
};

OracleBatchReport oracle_waterfill_agreement(int count, uint64_t seed);
OracleBatchReport oracle_lpo_grid(int count, uint64_t seed);
OracleBatchReport oracle_opad_grid(int count, uint64_t seed);
OracleBatchReport oracle_greedy_gap(int count, uint64_t seed);

std::string format_report(const OracleBatchReport& report);

} // namespace nomadbs
