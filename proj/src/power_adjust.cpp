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

#include "power_adjust.hpp"

#include <algorithm>
#include <cmath>

namespace nomadbs {

const char* adjust_case_name(AdjustCase c) {
  switch (c) {
    case AdjustCase::Interior: return "interior";
    case AdjustCase::ClampedLower: return "clamped_lower";
    case AdjustCase::ClampedUpper: return "clamped_upper";
    case AdjustCase::Rejected: return "rejected";
  }
  return "?";
}

double lpo_interior_power(double waterline_mw, int n_sole, double gamma_eff) {
  // Stationary point of N w (1 + p g)^(-1/N) + p in p: (1 + p g)^((N+1)/N) = w g.
  const double wg = waterline_mw * gamma_eff;
  const double n = static_cast<double>(n_sole);
  return (std::pow(wg, n / (n + 1.0)) - 1.0) / gamma_eff;
}

double lpo_power(double waterline_mw, int n_sole, double p1_mw, double gain2_sq,
                 double noise_mw, double mu) {
  const double gamma_eff = gain2_sq / (p1_mw * gain2_sq + noise_mw);
  const double interior = lpo_interior_power(waterline_mw, n_sole, gamma_eff);
  const double floor = p1_mw * (1.0 + mu);
  return interior >= floor ? interior : floor;
}

DpaClamp dpa_clamp(double p2_waterfill_mw, double p1_mw, double lower, double upper,
                   double mu) {
  DpaClamp out;
  const double ratio = p2_waterfill_mw / p1_mw;
  if (ratio >= lower && ratio <= upper) {
    out.ok = true;
    out.case_tag = AdjustCase::Interior;
    out.p2_mw = p2_waterfill_mw;
    return out;
  }
  if (lower * (1.0 + mu) > upper * (1.0 - mu)) return out; // band emptied by the margin
  out.ok = true;
  if (ratio < lower) {
    out.case_tag = AdjustCase::ClampedLower;
    out.p2_mw = p1_mw * lower * (1.0 + mu);
  } else {
    out.case_tag = AdjustCase::ClampedUpper;
    out.p2_mw = p1_mw * upper * (1.0 - mu);
  }
  return out;
}

AdjustOutcome dpa_adjust(const WaterfillAccount& k2_account, double gamma2, double p1_mw,
                         double lower, double upper, double mu) {
  AdjustOutcome out;
  const double w2 = k2_account.waterline_mw();
  const double p2_wf = waterline_after_add(w2, k2_account.size(), gamma2) - 1.0 / gamma2;
  const DpaClamp clamp = dpa_clamp(p2_wf, p1_mw, lower, upper, mu);
  if (!clamp.ok) return out;
  SecondUserEval eval = evaluate_second_user(k2_account, gamma2, clamp.p2_mw);
  if (!eval.ok) return out;
  out.ok = true;
  out.case_tag = clamp.case_tag;
  out.p1_mw = p1_mw;
  out.p2_mw = clamp.p2_mw;
  out.delta_p_total_mw = eval.delta_p_mw;
  out.k2_eval = std::move(eval);
  return out;
}

RootResult find_root_bisect_secant(const std::function<double(double)>& f, double lo,
                                   double hi, double xtol_rel, int max_iter) {
  RootResult res;
  double flo = f(lo), fhi = f(hi);
  res.evals = 2;
  if (flo == 0.0) { res.ok = true; res.x = lo; res.fx = 0.0; return res; }
  if (fhi == 0.0) { res.ok = true; res.x = hi; res.fx = 0.0; return res; }
  if ((flo < 0.0) == (fhi < 0.0)) return res; // no sign change
  double a = lo, b = hi, fa = flo, fb = fhi;
  double x_prev = a, f_prev = fa, x = b, fx = fb;
  for (int it = 0; it < max_iter; ++it) {
    double cand;
    const double denom = fx - f_prev;
    if (denom != 0.0) {
      cand = x - fx * (x - x_prev) / denom;
      if (!(cand > a && cand < b)) cand = 0.5 * (a + b);
    } else {
      cand = 0.5 * (a + b);
    }
    const double fc = f(cand);
    ++res.evals;
    x_prev = x; f_prev = fx;
    x = cand; fx = fc;
    if (fc == 0.0) break;
    if ((fc < 0.0) == (fa < 0.0)) { a = cand; fa = fc; }
    else { b = cand; fb = fc; }
    if (b - a <= xtol_rel * std::max(std::fabs(a), std::fabs(b))) break;
  }
  // Final bisection polish of the bracket midpoint if the secant iterate
  // drifted; keep whichever endpoint evaluates smallest in magnitude.
  res.ok = true;
  res.x = x;
  res.fx = fx;
  if (std::fabs(fa) < std::fabs(res.fx)) { res.x = a; res.fx = fa; }
  if (std::fabs(fb) < std::fabs(res.fx)) { res.x = b; res.fx = fb; }
  return res;
}

namespace {

// Total-power stationarity along the ray p2 = slope * p1 for a pair whose
// first user re-freezes its paired subcarrier and whose second user
// rebalances its sole set (both interference-free rates).
struct RayObjective {
  double gamma1;      // first user's gain on the subcarrier, 1/mW
  double a_dimless;   // 1 + P_I * gamma1 (= W_I * gamma1)
  double m1;          // N1 / (N1 - 1)
  double w2_gamma2;   // second user's waterline * gamma2
  double gamma2;      // 1/mW
  double m2;          // (N2 + 1) / N2
  double slope;

  double operator()(double p1) const {
    const double u = 1.0 + p1 * gamma1;
    const double k1_term = 1.0 - std::pow(a_dimless / u, m1);
    const double p2 = slope * p1;
    const double k2_term = 1.0 - w2_gamma2 * std::pow(1.0 + p2 * gamma2, -m2);
    return k1_term + slope * k2_term;
  }
};

struct CaseCandidate {
  AdjustOutcome outcome;
  bool valid = false;
};

CaseCandidate evaluate_boundary_case(const JointAdjustInputs& in, double slope,
                                     AdjustCase tag) {
  CaseCandidate cand;
  const WaterfillAccount& k1 = *in.k1_account;
  const WaterfillAccount& k2 = *in.k2_account;
  const WaterfillAccount::Entry* e1 = k1.find(in.subcarrier);
  if (!e1) return cand;
  const double p_initial = k1.power_mw(*e1);
  const double gamma2 = in.g2_k2_r2 / in.noise_mw;

  double p1 = p_initial;
  int root_solves = 0;
  double residual = 0.0;
  if (k1.size() >= 2) {
    RayObjective g;
    g.gamma1 = e1->gain_norm;
    g.a_dimless = 1.0 + p_initial * g.gamma1;
    g.m1 = static_cast<double>(k1.size()) / (k1.size() - 1.0);
    g.w2_gamma2 = k2.waterline_mw() * gamma2;
    g.gamma2 = gamma2;
    g.m2 = (k2.size() + 1.0) / static_cast<double>(k2.size());
    g.slope = slope;

    const double lo = p_initial * 1e-12;
    const double hi = p_initial * 1e4;
    if (g(lo) >= 0.0) return cand;   // minimum collapses to zero power
    RootResult root = find_root_bisect_secant([&g](double x) { return g(x); }, lo, hi);
    ++root_solves;
    if (!root.ok) return cand;       // cannot bracket the stationary point
    p1 = root.x;
    residual = root.fx;
  }
  // With a single sole subcarrier the first user cannot absorb any rate
  // change, so its power stays at the initial value.

  FirstUserEval k1_eval = evaluate_first_user_refreeze(k1, in.subcarrier, p1);
  if (!k1_eval.ok) return cand;
  SecondUserEval k2_eval = evaluate_second_user(k2, gamma2, slope * p1);
  if (!k2_eval.ok) return cand;
  if (p1 < 0.0 || k2_eval.p2_mw < 0.0) return cand;

  cand.valid = true;
  cand.outcome.ok = true;
  cand.outcome.case_tag = tag;
  cand.outcome.p1_mw = p1;
  cand.outcome.p2_mw = slope * p1;
  cand.outcome.p1_changed = true;
  cand.outcome.delta_p_total_mw = k1_eval.delta_p_mw + k2_eval.delta_p_mw;
  cand.outcome.k1_eval = std::move(k1_eval);
  cand.outcome.k2_eval = std::move(k2_eval);
  cand.outcome.root_solves = root_solves;
  cand.outcome.residual = residual;
  return cand;
}

} // namespace

AdjustOutcome opad_joint(const JointAdjustInputs& in, JointCaseHint hint) {
  AdjustOutcome best;
  const WaterfillAccount& k1 = *in.k1_account;
  const WaterfillAccount& k2 = *in.k2_account;
  const WaterfillAccount::Entry* e1 = k1.find(in.subcarrier);
  if (!e1 || k2.empty()) return best;

  const double p_initial = k1.power_mw(*e1);
  const double gamma2 = in.g2_k2_r2 / in.noise_mw;
  const double lower = in.g2_k1_r1 / in.g2_k1_r2;
  const double upper = in.g2_k2_r1 / in.g2_k2_r2;

  int total_solves = 0;
  auto consider = [&](CaseCandidate cand) {
    total_solves += cand.outcome.root_solves;
    if (!cand.valid) return;
    if (!best.ok || cand.outcome.delta_p_total_mw < best.delta_p_total_mw)
      best = std::move(cand.outcome);
  };

  // Unconstrained case: both users keep their independent waterfilling
  // solutions; admissible only if the ratio lands inside the raw band.
  if (hint == JointCaseHint::Full || hint == JointCaseHint::InteriorOnly) {
    const double p2_wf =
        waterline_after_add(k2.waterline_mw(), k2.size(), gamma2) - 1.0 / gamma2;
    const double ratio = p2_wf / p_initial;
    if (p2_wf > 0.0 && ratio >= lower && ratio <= upper) {
      SecondUserEval k2_eval = evaluate_second_user(k2, gamma2, p2_wf);
      if (k2_eval.ok) {
        CaseCandidate cand;
        cand.valid = true;
        cand.outcome.ok = true;
        cand.outcome.case_tag = AdjustCase::Interior;
        cand.outcome.p1_mw = p_initial;
        cand.outcome.p2_mw = p2_wf;
        cand.outcome.p1_changed = false;
        cand.outcome.delta_p_total_mw = k2_eval.delta_p_mw;
        cand.outcome.k2_eval = std::move(k2_eval);
        consider(cand);
      }
    }
  }

  if (hint == JointCaseHint::Full || hint == JointCaseHint::LowerOnly)
    consider(evaluate_boundary_case(in, lower * (1.0 + in.mu), AdjustCase::ClampedLower));
  if (hint == JointCaseHint::Full || hint == JointCaseHint::UpperOnly)
    consider(evaluate_boundary_case(in, upper * (1.0 - in.mu), AdjustCase::ClampedUpper));

  best.root_solves = total_solves;
  return best;
}

AdjustOutcome sopad_refine(const JointAdjustInputs& in, const AdjustOutcome& dpa_outcome) {
  if (!dpa_outcome.ok) return dpa_outcome;
  JointCaseHint hint = JointCaseHint::InteriorOnly;
  if (dpa_outcome.case_tag == AdjustCase::ClampedLower) hint = JointCaseHint::LowerOnly;
  if (dpa_outcome.case_tag == AdjustCase::ClampedUpper) hint = JointCaseHint::UpperOnly;
  if (hint == JointCaseHint::InteriorOnly) return dpa_outcome; // already optimal
  AdjustOutcome refined = opad_joint(in, hint);
  if (refined.ok && refined.delta_p_total_mw <= dpa_outcome.delta_p_total_mw) return refined;
  AdjustOutcome kept = dpa_outcome;
  kept.root_solves += refined.root_solves;
  return kept;
}

} // namespace nomadbs
