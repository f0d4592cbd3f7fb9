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

#include <functional>

#include "waterfill.hpp"

namespace nomadbs {

enum class AdjustCase { Interior, ClampedLower, ClampedUpper, Rejected };

const char* adjust_case_name(AdjustCase c);

/// Result of one pairing power adjustment. delta_p_total_mw covers both
/// affected users; the evals carry the rebalanced accounts to commit on
/// acceptance.
struct AdjustOutcome {
  bool ok = false;
  AdjustCase case_tag = AdjustCase::Rejected;
  double p1_mw = 0.0;
  double p2_mw = 0.0;
  double delta_p_total_mw = 0.0;
  bool p1_changed = false;        // true when the first user was re-frozen
  FirstUserEval k1_eval;          // meaningful iff p1_changed
  SecondUserEval k2_eval;
  int root_solves = 0;
  double residual = 0.0;          // stationarity residual at a solved root
};

/// Interior optimum of the second-user power against an account with
/// waterline `w` over `n_sole` subcarriers and candidate SINR slope
/// `gamma_eff` (1/mW). May be negative when the candidate cannot reduce
/// power; callers clamp.
double lpo_interior_power(double waterline_mw, int n_sole, double gamma_eff);

/// Local power optimization for a same-antenna pairing: the interior
/// optimum if it clears the margin, else the margin floor p1 (1 + mu).
double lpo_power(double waterline_mw, int n_sole, double p1_mw, double gain2_sq,
                 double noise_mw, double mu);

/// Direct power adjustment: keep the user-specific waterfilling power when
/// it falls inside the ratio band, else pin it just inside the violated
/// edge. ok=false when the margin-shrunk band is empty.
struct DpaClamp {
  bool ok = false;
  AdjustCase case_tag = AdjustCase::Rejected;
  double p2_mw = 0.0;
};
DpaClamp dpa_clamp(double p2_waterfill_mw, double p1_mw, double lower, double upper,
                   double mu);

/// DPA with the account rebalance folded in: returns the adjusted power and
/// the full power delta of the second user.
AdjustOutcome dpa_adjust(const WaterfillAccount& k2_account, double gamma2, double p1_mw,
                         double lower, double upper, double mu);

/// Inputs of the joint two-user adjustment on a mutual-SIC candidate.
/// The first user holds `subcarrier` in its account; the second user's
/// account does not contain it.
struct JointAdjustInputs {
  const WaterfillAccount* k1_account = nullptr;
  const WaterfillAccount* k2_account = nullptr;
  int subcarrier = -1;
  double g2_k1_r1 = 0.0;
  double g2_k1_r2 = 0.0;
  double g2_k2_r1 = 0.0;
  double g2_k2_r2 = 0.0;
  double noise_mw = 0.0;
  double mu = 0.0;
};

enum class JointCaseHint { Full, InteriorOnly, LowerOnly, UpperOnly };

/// Optimal power adjustment: evaluates the unconstrained case and, when the
/// ratio band binds, the two boundary cases via a bracketed 1-D root solve
/// of the stationarity equation; returns the feasible case with the lowest
/// total power delta. ok=false when no case yields nonnegative powers.
AdjustOutcome opad_joint(const JointAdjustInputs& in,
                         JointCaseHint hint = JointCaseHint::Full);

/// Semi-optimal refinement: runs the joint adjustment restricted to the
/// boundary case the DPA clamp identified (at most one root solve) and
/// keeps whichever outcome is better.
AdjustOutcome sopad_refine(const JointAdjustInputs& in, const AdjustOutcome& dpa_outcome);

/// Bracketed scalar root finding: bisection safeguarded secant steps.
/// Requires f(lo) and f(hi) of opposite sign.
struct RootResult {
  bool ok = false;
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
};
RootResult find_root_bisect_secant(const std::function<double(double)>& f, double lo,
                                   double hi, double xtol_rel = 1e-15, int max_iter = 200);

} // namespace nomadbs
