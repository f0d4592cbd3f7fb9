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

// End-to-end verification suite. Each numbered check prints one PASS/FAIL
// line; the process exits with the number of failed checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "allocate.hpp"
#include "campaign.hpp"
#include "channel.hpp"
#include "oracle.hpp"
#include "power_adjust.hpp"
#include "rates.hpp"
#include "rng.hpp"
#include "waterfill.hpp"

using namespace nomadbs;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

int workers() {
  return std::max(2u, std::thread::hardware_concurrency());
}

SystemParams reference_params() {
  SystemParams p;
  p.num_users = 15;
  p.num_subcarriers = 64;
  p.num_rrh = 4;
  p.rate_req = 9e6;
  p.seed = 20260810;
  return p;
}

struct MethodStats {
  std::vector<double> power_mw; // per trial, audited rows only
  double mean_mw = 0.0;
  double mean_nonmux = 0.0, mean_mut = 0.0, mean_srrh = 0.0, mean_drrh = 0.0;
  int audit_failures = 0;
};

std::map<std::string, MethodStats> per_method(const CampaignResult& result) {
  std::map<std::string, MethodStats> stats;
  for (const auto& row : result.rows) {
    MethodStats& s = stats[row.method];
    if (row.audit_ok && std::isfinite(row.total_power_mw))
      s.power_mw.push_back(row.total_power_mw);
    else
      ++s.audit_failures;
    s.mean_nonmux += row.cats.non_mux;
    s.mean_mut += row.cats.mutual_sic;
    s.mean_srrh += row.cats.single_sic_srrh;
    s.mean_drrh += row.cats.single_sic_drrh;
  }
  for (auto& [name, s] : stats) {
    const int n = static_cast<int>(s.power_mw.size()) + s.audit_failures;
    if (!s.power_mw.empty()) {
      double sum = 0.0;
      for (double v : s.power_mw) sum += v;
      s.mean_mw = sum / s.power_mw.size();
    }
    if (n > 0) {
      s.mean_nonmux /= n;
      s.mean_mut /= n;
      s.mean_srrh /= n;
      s.mean_drrh /= n;
    }
  }
  return stats;
}

CampaignResult run_point(const SystemParams& params, const std::vector<MethodId>& methods,
                         int trials) {
  CampaignConfig config;
  config.params = params;
  config.methods = methods;
  config.trials = trials;
  return run_campaign(config, workers(), -1, false);
}

// One-sided paired bootstrap: confidence that mean(second - first) > 0.
double bootstrap_confidence_greater(const std::vector<double>& first,
                                    const std::vector<double>& second, uint64_t seed) {
  const size_t n = std::min(first.size(), second.size());
  std::vector<double> diff(n);
  for (size_t i = 0; i < n; ++i) diff[i] = second[i] - first[i];
  Rng rng(mix_seed({seed, 0xb00ULL}));
  const int resamples = 2000;
  int positive = 0;
  for (int b = 0; b < resamples; ++b) {
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i)
      sum += diff[static_cast<size_t>(rng.uniform01() * n)];
    if (sum > 0.0) ++positive;
  }
  return static_cast<double>(positive) / resamples;
}

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

// --- criterion 1 ---------------------------------------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const OracleBatchReport report_wf = oracle_waterfill_agreement(10000, 424241);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(1, report_wf.pass && secs < 10.0,
         "recursive waterfilling matches the bisection oracle (1e4 instances, 1e-9)",
         "max gap " + fmt(report_wf.max_gap) + ", " + fmt(secs, 3) + " s");
}

// --- criterion 2 ---------------------------------------------------------

void criterion_2() {
  Rng rng(515151);
  bool pass = true;
  std::string detail;

  // same-antenna decode-surplus signs, product-form evaluation
  for (int i = 0; i < 10000 && pass; ++i) {
    const double g2 = std::pow(10.0, rng.uniform(-3.0, 3.0));
    const double g1 = g2 * rng.uniform(1.0, 100.0);
    const double p1 = rng.uniform(0.0, 10.0), p2 = rng.uniform(0.0, 10.0);
    if (!(p2 * (g1 - g2) >= 0.0)) { pass = false; detail = "strong-user surplus sign"; }
    if (!(p1 * (g2 - g1) - p1 * p2 * g1 * g2 <= 0.0)) {
      pass = false;
      detail = "weak-user surplus sign";
    }
    if (srrh_decode_surplus(p1, p2, g1, g2, 1.0, 1.0) < -1e-9) {
      pass = false;
      detail = "rate-arithmetic surplus";
    }
  }

  // the best admissible candidate is the strongest admissible gain
  for (int i = 0; i < 10000 && pass; ++i) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 8.0);
    WaterfillAccount acct;
    acct.set_rate_norm(rng.uniform(2.0, 40.0));
    for (int j = 0; j < n; ++j)
      acct.add_subcarrier(std::pow(10.0, rng.uniform(-1.0, 3.0)), j, 0);
    const double w = acct.waterline_mw();
    double best_gain = -1.0, best_delta = 1e300;
    bool any = false;
    for (int c = 0; c < 6; ++c) {
      const double g = std::pow(10.0, rng.uniform(-2.0, 3.0));
      if (!admit_check(w, g)) continue;
      any = true;
      const double delta = add_power_delta(w, acct.size(), g);
      best_gain = std::max(best_gain, g);
      best_delta = std::min(best_delta, delta);
    }
    if (any) {
      const double delta_of_best_gain = add_power_delta(w, acct.size(), best_gain);
      if (std::fabs(delta_of_best_gain - best_delta) >
          1e-9 * std::max(1.0, std::fabs(best_delta))) {
        pass = false;
        detail = "highest gain did not minimize the power delta";
      }
      if (delta_of_best_gain >= 0.0) {
        pass = false;
        detail = "admissible add failed to decrease power";
      }
    }
  }

  // admitted adds keep every power nonnegative
  for (int i = 0; i < 10000 && pass; ++i) {
    WaterfillAccount acct;
    acct.set_rate_norm(rng.uniform(1.0, 30.0));
    acct.add_subcarrier(std::pow(10.0, rng.uniform(-1.0, 3.0)), 0, 0);
    for (int j = 1; j < 8; ++j) {
      const double g = std::pow(10.0, rng.uniform(-2.0, 3.0));
      if (admit_check(acct.waterline_mw(), g)) acct.add_subcarrier(g, j, 0);
    }
    for (double p : acct.powers_from_waterline())
      if (p < -1e-12) { pass = false; detail = "negative power after admitted add"; }
  }

  // mutual-cancellation feasibility implies a nonempty ratio band
  for (int i = 0; i < 10000 && pass; ++i) {
    PairLink l;
    l.r1 = 0;
    l.r2 = 1;
    l.g2_k2_r2 = std::pow(10.0, rng.uniform(-3.0, 3.0));
    l.g2_k1_r2 = l.g2_k2_r2 * rng.uniform(1.0, 50.0);
    l.g2_k1_r1 = std::pow(10.0, rng.uniform(-3.0, 3.0));
    l.g2_k2_r1 = l.g2_k1_r1 * rng.uniform(1.0, 50.0);
    if (!mutual_sic_feasible(l)) { pass = false; detail = "constructed pair infeasible"; }
    const auto [lo, hi] = mux_ratio_bounds(l);
    if (!(lo <= hi)) { pass = false; detail = "empty ratio band"; }
  }

  report(2, pass, "proposition properties over 1e4 random draws each",
         pass ? "surpluses, argmax-gain, nonnegative powers, nonempty band" : detail);
}

// --- criterion 3 ---------------------------------------------------------

void criterion_3() {
  SystemParams p = reference_params();
  p.rate_req = 9e6;
  const SystemParams params = validate_config(p);
  bool pass = true;
  double worst = 0.0;
  int cells = 0;
  for (uint64_t trial = 0; trial < 100 && pass; ++trial) {
    const ChannelTensor channel = realize_trial(params, trial);
    for (MethodId method : all_methods()) {
      const AllocationState state = run_method(method, channel, params);
      const AuditReport rep = audit(state, channel, params);
      worst = std::max(worst, rep.max_rate_rel_err);
      if (!rep.rate_ok || !rep.constraints_ok) pass = false;
      ++cells;
    }
  }
  report(3, pass,
         "rate and multiplexing audit, 100 trials x all methods at 9 Mbps",
         fmt(cells, 6) + " allocations, worst rate error " + fmt(worst));
}

// --- criterion 4 ---------------------------------------------------------

void criterion_4() {
  const OracleBatchReport lpo = oracle_lpo_grid(1000, 717171);
  report(4, lpo.pass, "locally optimized power vs refined grid (1e3 instances, 1e-6)",
         "max gap " + fmt(lpo.max_gap));
  const OracleBatchReport opad = oracle_opad_grid(200, 727272);
  report(4, opad.pass, "joint adjustment vs 2-D grid (200 instances, 1e-4; residual 1e-10)",
         "max gap " + fmt(opad.max_gap) + ", " + opad.details);
}

// --- criteria 5 and 7 (12 Mbps campaign) ---------------------------------

void criteria_5_and_7_12mbps(MethodStats* lpo12, MethodStats* sopad12) {
  SystemParams p = reference_params();
  p.rate_req = 12e6;
  const CampaignResult result = run_point(
      p,
      {MethodId::OMA_CBS, MethodId::OMA_DBS, MethodId::NOMA_DBS_SRRH,
       MethodId::NOMA_DBS_SRRH_LPO, MethodId::NOMA_DBS_MUTSIC_SOPAD},
      500);
  const auto stats = per_method(result);
  const MethodStats& oma_cbs = stats.at("OMA_CBS");
  const MethodStats& oma_dbs = stats.at("OMA_DBS");
  const MethodStats& srrh = stats.at("NOMA_DBS_SRRH");
  const MethodStats& lpo = stats.at("NOMA_DBS_SRRH_LPO");
  const MethodStats& sopad = stats.at("NOMA_DBS_MUTSIC_SOPAD");
  *lpo12 = lpo;
  *sopad12 = sopad;

  const bool ordering =
      oma_dbs.mean_mw > srrh.mean_mw && srrh.mean_mw > lpo.mean_mw;
  const double reduction = (srrh.mean_mw - lpo.mean_mw) / srrh.mean_mw;
  const bool reduction_ok = reduction >= 0.04 && reduction <= 0.12;
  const double cbs_ratio = oma_cbs.mean_mw / oma_dbs.mean_mw;
  const bool ratio_ok = cbs_ratio >= 8.0 && cbs_ratio <= 32.0;

  report(5, ordering && reduction_ok && ratio_ok,
         "method ordering at 12 Mbps (500 paired trials)",
         "mean W: OMA_CBS " + fmt(oma_cbs.mean_mw / 1000.0) + ", OMA_DBS " +
             fmt(oma_dbs.mean_mw / 1000.0) + ", SRRH " + fmt(srrh.mean_mw / 1000.0) +
             ", LPO " + fmt(lpo.mean_mw / 1000.0) + "; LPO reduction " +
             fmt(100.0 * reduction, 3) + "% (need 4..12), CBS/DBS ratio " +
             fmt(cbs_ratio, 3) + " (need 8..32)");
}

// --- criterion 6 (13 Mbps campaign) ---------------------------------------

void criterion_6() {
  SystemParams p = reference_params();
  p.rate_req = 13e6;
  const CampaignResult result = run_point(
      p,
      {MethodId::NOMA_DBS_MUTSIC_UC, MethodId::NOMA_DBS_MUTSIC_OPAD,
       MethodId::NOMA_DBS_MUTSIC_SOPAD, MethodId::NOMA_DBS_MUTSIC_DPA,
       MethodId::NOMA_DBS_SRRH_LPO, MethodId::NOMA_DBS_MUT_AND_SINGSIC},
      500);
  const auto stats = per_method(result);
  const std::vector<std::string> chain = {
      "NOMA_DBS_MUTSIC_UC", "NOMA_DBS_MUTSIC_OPAD", "NOMA_DBS_MUTSIC_SOPAD",
      "NOMA_DBS_MUTSIC_DPA", "NOMA_DBS_SRRH_LPO"};
  bool pass = true;
  std::ostringstream detail;
  detail.precision(4);
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto& a = stats.at(chain[i]).power_mw;
    const auto& b = stats.at(chain[i + 1]).power_mw;
    const double conf = bootstrap_confidence_greater(a, b, 1000 + i);
    detail << chain[i] << "<" << chain[i + 1] << " conf " << conf << "; ";
    if (conf < 0.95) pass = false;
  }
  const double conf_comb = bootstrap_confidence_greater(
      stats.at("NOMA_DBS_MUT_AND_SINGSIC").power_mw,
      stats.at("NOMA_DBS_MUTSIC_SOPAD").power_mw, 2000);
  detail << "MUT&SING<SOPAD conf " << conf_comb;
  if (conf_comb < 0.95) pass = false;
  for (const auto& name : chain)
    detail << "; " << name << " " << stats.at(name).mean_mw / 1000.0 << " W";
  report(6, pass, "mutual-cancellation ordering at 13 Mbps (bootstrap 95%)",
         detail.str());
}

// --- criterion 7 ----------------------------------------------------------

void criterion_7(const MethodStats& lpo12, const MethodStats& sopad12, double secs_budget,
                 double elapsed) {
  SystemParams p = reference_params();
  p.rate_req = 9e6;
  const CampaignResult result = run_point(
      p,
      {MethodId::NOMA_DBS_SRRH_LPO, MethodId::NOMA_DBS_MUTSIC_SOPAD,
       MethodId::NOMA_DBS_MUT_AND_SINGSIC},
      500);
  const auto stats = per_method(result);
  const double s = p.num_subcarriers;

  const double lpo_frac9 = stats.at("NOMA_DBS_SRRH_LPO").mean_srrh / s;
  const double lpo_frac12 = lpo12.mean_srrh / s;
  const double sopad_frac9 = stats.at("NOMA_DBS_MUTSIC_SOPAD").mean_mut / s;
  const double sopad_frac12 = sopad12.mean_mut / s;
  const bool fractions_ok = std::fabs(lpo_frac9 - 0.25) <= 0.08 &&
                            std::fabs(lpo_frac12 - 0.32) <= 0.08 &&
                            std::fabs(sopad_frac9 - 0.07) <= 0.04 &&
                            std::fabs(sopad_frac12 - 0.09) <= 0.04;

  const MethodStats& comb = stats.at("NOMA_DBS_MUT_AND_SINGSIC");
  const double ref[4] = {39.332, 4.601, 4.984, 15.083};
  const double got[4] = {comb.mean_nonmux, comb.mean_mut, comb.mean_srrh,
                         comb.mean_drrh};
  bool combined_ok = true;
  for (int i = 0; i < 4; ++i)
    if (std::fabs(got[i] - ref[i]) > 0.30 * ref[i]) combined_ok = false;

  std::ostringstream detail;
  detail.precision(4);
  detail << "single-SIC share LPO " << 100 * lpo_frac9 << "% @9 / " << 100 * lpo_frac12
         << "% @12 (25/32 +-8pp); mutual share SOPAd " << 100 * sopad_frac9 << "% / "
         << 100 * sopad_frac12 << "% (7/9 +-4pp); combined means " << got[0] << "/"
         << got[1] << "/" << got[2] << "/" << got[3] << " vs " << ref[0] << "/" << ref[1]
         << "/" << ref[2] << "/" << ref[3] << " (+-30%)"
         << "; elapsed " << elapsed << " s of " << secs_budget;
  report(7, fractions_ok && combined_ok && elapsed < secs_budget,
         "multiplexing statistics at 9 and 12 Mbps", detail.str());
}

// --- criterion 8 ----------------------------------------------------------

void criterion_8() {
  SystemParams p = reference_params();
  p.rate_req = 5e6;
  p.num_subcarriers = 128;
  p.num_users = 36;
  const CampaignResult result = run_point(
      p, {MethodId::NOMA_DBS_SRRH_LPO, MethodId::NOMA_DBS_MUT_AND_SINGSIC}, 300);
  const auto stats = per_method(result);
  const double lpo = stats.at("NOMA_DBS_SRRH_LPO").mean_mw;
  const double comb = stats.at("NOMA_DBS_MUT_AND_SINGSIC").mean_mw;
  const double ratio = comb / lpo;
  report(8, ratio <= 0.65,
         "crowded-cell scaling: combined pass vs single-SIC at K=36, S=128",
         "mean power ratio " + fmt(ratio, 3) + " (need <= 0.65; reference 0.376)");
}

// --- criterion 9 ----------------------------------------------------------

void criterion_9() {
  CampaignConfig config;
  SystemParams p = reference_params();
  p.rate_req = 9e6;
  p.num_users = 8;
  p.num_subcarriers = 32;
  config.params = p;
  config.methods = {MethodId::OMA_DBS, MethodId::NOMA_DBS_SRRH_LPO,
                    MethodId::NOMA_DBS_MUT_AND_SINGSIC};
  config.trials = 20;
  const CampaignResult a = run_campaign(config, 1, -1, false);
  const CampaignResult b = run_campaign(config, 8, -1, false);
  write_campaign_csv(a, "acceptance_w1.csv");
  write_campaign_csv(b, "acceptance_w8.csv");
  std::ifstream fa("acceptance_w1.csv"), fb("acceptance_w8.csv");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  const bool same = sa.str() == sb.str() && !sa.str().empty();
  std::remove("acceptance_w1.csv");
  std::remove("acceptance_w8.csv");
  report(9, same, "campaign CSV byte-identical across 1 and 8 workers",
         same ? "identical bytes" : "outputs differ");
}

// --- criterion 10 ---------------------------------------------------------

void criterion_10() {
  const OracleBatchReport gap = oracle_greedy_gap(1000, 737373);
  report(10, gap.pass, "greedy assignment never beats exhaustive search (1e3 instances)",
         gap.details);
}

} // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::printf("nomadbs acceptance suite (%d workers)\n", workers());

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();

  MethodStats lpo12, sopad12;
  criteria_5_and_7_12mbps(&lpo12, &sopad12);
  criterion_6();
  const double elapsed_so_far =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  criterion_7(lpo12, sopad12, 600.0, elapsed_so_far);
  criterion_8();
  criterion_9();
  criterion_10();

  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s — %d criterion check(s) failed, %.1f s total\n",
              g_failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS" : "ACCEPTANCE FAILURES",
              g_failures, total);
  return g_failures;
}
