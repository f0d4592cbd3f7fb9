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

#include "allocate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "power_adjust.hpp"
#include "rates.hpp"

namespace nomadbs {

namespace {

constexpr double kZeroPowerEps = 1e-12; // mW: released at retirement

// Slack for post-hoc constraint audits (pure roundoff allowance).
constexpr double kAuditSlack = 1e-9;

int argmax_power_user(const AllocationState& state, const std::vector<char>& active) {
  int best = -1;
  double best_power = -1.0;
  for (size_t k = 0; k < state.users.size(); ++k) {
    if (!active[k]) continue;
    const double p = state.users[k].total_power_mw();
    if (p > best_power) {
      best_power = p;
      best = static_cast<int>(k);
    }
  }
  return best;
}

void mark_unallocated(AllocationState& state,
                      const std::vector<WaterfillAccount::Entry>& released) {
  for (const auto& e : released) {
    state.sole_owner[e.subcarrier] = -1;
    state.sole_rrh[e.subcarrier] = -1;
    state.category[e.subcarrier] = SubcarrierCategory::Unallocated;
  }
}

void retire_user(AllocationState& state, std::vector<char>& active, int user) {
  std::vector<WaterfillAccount::Entry> released;
  state.users[user].account.release_zero_power(kZeroPowerEps, &released);
  mark_unallocated(state, released);
  active[user] = 0;
}

// Committed acceptance of a pairing: the first user's subcarrier leaves its
// sole account at a frozen power, the second user's account takes the
// rebalanced copy, and the pair record is written.
void commit_pair(AllocationState& state, int n, int k1, int k2, int r1, int r2,
                 double p1_mw, const SecondUserEval& k2_eval, SubcarrierCategory category) {
  UserState& u1 = state.users[k1];
  const WaterfillAccount::Entry* e1 = u1.account.find(n);
  if (!e1) throw std::logic_error("commit_pair: first user does not hold the subcarrier");
  const double delivered = u1.account.log2_waterline() + e1->log2_gain;
  u1.account.freeze_out(n, delivered);
  u1.frozen_power_mw += p1_mw;

  UserState& u2 = state.users[k2];
  u2.account = k2_eval.account_after;
  u2.frozen_power_mw += k2_eval.p2_mw;
  mark_unallocated(state, k2_eval.released);

  PairRecord rec;
  rec.subcarrier = n;
  rec.first_user = k1;
  rec.second_user = k2;
  rec.r1 = r1;
  rec.r2 = r2;
  rec.p1_mw = p1_mw;
  rec.p2_mw = k2_eval.p2_mw;
  rec.category = category;
  state.pairs.push_back(rec);
  state.sole_owner[n] = -1;
  state.sole_rrh[n] = -1;
  state.category[n] = category;
}

// Variant of commit_pair for a re-frozen first user (joint adjustment):
// the first user's account was already rebalanced for the new power.
void commit_pair_refrozen(AllocationState& state, int n, int k1, int k2, int r1, int r2,
                          const FirstUserEval& k1_eval, const SecondUserEval& k2_eval,
                          SubcarrierCategory category) {
  UserState& u1 = state.users[k1];
  u1.account = k1_eval.account_after;
  u1.frozen_power_mw += k1_eval.p1_mw;
  mark_unallocated(state, k1_eval.released);

  UserState& u2 = state.users[k2];
  u2.account = k2_eval.account_after;
  u2.frozen_power_mw += k2_eval.p2_mw;
  mark_unallocated(state, k2_eval.released);

  PairRecord rec;
  rec.subcarrier = n;
  rec.first_user = k1;
  rec.second_user = k2;
  rec.r1 = r1;
  rec.r2 = r2;
  rec.p1_mw = k1_eval.p1_mw;
  rec.p2_mw = k2_eval.p2_mw;
  rec.category = category;
  state.pairs.push_back(rec);
  state.sole_owner[n] = -1;
  state.sole_rrh[n] = -1;
  state.category[n] = category;
}

} // namespace

const char* method_name(MethodId id) {
  switch (id) {
    case MethodId::OMA_CBS: return "OMA_CBS";
    case MethodId::NOMA_CBS: return "NOMA_CBS";
    case MethodId::OMA_DBS: return "OMA_DBS";
    case MethodId::NOMA_DBS_SRRH: return "NOMA_DBS_SRRH";
    case MethodId::NOMA_DBS_SRRH_LPO: return "NOMA_DBS_SRRH_LPO";
    case MethodId::NOMA_DBS_MUTSIC_UC: return "NOMA_DBS_MUTSIC_UC";
    case MethodId::NOMA_DBS_MUTSIC_DPA: return "NOMA_DBS_MUTSIC_DPA";
    case MethodId::NOMA_DBS_MUTSIC_OPAD: return "NOMA_DBS_MUTSIC_OPAD";
    case MethodId::NOMA_DBS_MUTSIC_SOPAD: return "NOMA_DBS_MUTSIC_SOPAD";
    case MethodId::NOMA_DBS_MUT_AND_SINGSIC: return "NOMA_DBS_MUT_AND_SINGSIC";
  }
  return "?";
}

bool method_from_name(const std::string& name, MethodId* out) {
  for (MethodId id : all_methods()) {
    if (name == method_name(id)) {
      *out = id;
      return true;
    }
  }
  return false;
}

std::vector<MethodId> all_methods() {
  return {MethodId::OMA_CBS,
          MethodId::NOMA_CBS,
          MethodId::OMA_DBS,
          MethodId::NOMA_DBS_SRRH,
          MethodId::NOMA_DBS_SRRH_LPO,
          MethodId::NOMA_DBS_MUTSIC_UC,
          MethodId::NOMA_DBS_MUTSIC_DPA,
          MethodId::NOMA_DBS_MUTSIC_OPAD,
          MethodId::NOMA_DBS_MUTSIC_SOPAD,
          MethodId::NOMA_DBS_MUT_AND_SINGSIC};
}

double AllocationState::total_power_mw() const {
  double total = 0.0;
  for (const auto& u : users) total += u.total_power_mw();
  return total;
}

CategoryCounts AllocationState::category_counts() const {
  CategoryCounts counts;
  for (SubcarrierCategory c : category) {
    switch (c) {
      case SubcarrierCategory::Unallocated: ++counts.unallocated; break;
      case SubcarrierCategory::NonMux: ++counts.non_mux; break;
      case SubcarrierCategory::MutualSic: ++counts.mutual_sic; break;
      case SubcarrierCategory::SingleSicSrrh: ++counts.single_sic_srrh; break;
      case SubcarrierCategory::SingleSicDrrh: ++counts.single_sic_drrh; break;
    }
  }
  return counts;
}

AllocationState worst_best_h_init(const ChannelTensor& channel, const SystemParams& params) {
  const int K = channel.num_users();
  const int S = channel.num_subcarriers();
  const int R = channel.num_rrh();
  if (S < K) throw std::invalid_argument("worst_best_h_init: need S >= K");

  AllocationState state;
  state.num_subcarriers = S;
  state.users.resize(K);
  state.sole_owner.assign(S, -1);
  state.sole_rrh.assign(S, -1);
  state.category.assign(S, SubcarrierCategory::Unallocated);

  const double rate_norm = params.rate_norm();
  const double noise = channel.noise_mw();

  // Priority: worst best-gain first, so cell-edge users keep their strongest
  // subcarriers.
  std::vector<double> best_gain(K, 0.0);
  for (int k = 0; k < K; ++k)
    for (int n = 0; n < S; ++n)
      for (int r = 0; r < R; ++r) best_gain[k] = std::max(best_gain[k], channel.gain(k, n, r));
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (best_gain[a] != best_gain[b]) return best_gain[a] < best_gain[b];
    return a < b;
  });

  for (int k : order) {
    int best_n = -1, best_r = -1;
    double best = -1.0;
    for (int n = 0; n < S; ++n) {
      if (state.sole_owner[n] != -1) continue;
      for (int r = 0; r < R; ++r) {
        const double g = channel.gain(k, n, r);
        if (g > best) {
          best = g;
          best_n = n;
          best_r = r;
        }
      }
    }
    UserState& u = state.users[k];
    u.account.set_rate_norm(rate_norm);
    u.account.add_subcarrier(channel.gain_sq(k, best_n, best_r) / noise, best_n, best_r);
    u.oma_gain_sequence.push_back(best);
    state.sole_owner[best_n] = k;
    state.sole_rrh[best_n] = best_r;
    state.category[best_n] = SubcarrierCategory::NonMux;
  }
  return state;
}

void oma_assign(AllocationState& state, const ChannelTensor& channel,
                const SystemParams& params) {
  const int S = channel.num_subcarriers();
  const int R = channel.num_rrh();
  const double noise = channel.noise_mw();
  const double rho = params.power_threshold_mw();

  std::vector<char> active(state.users.size(), 1);
  int available = 0;
  for (int n = 0; n < S; ++n)
    if (state.category[n] == SubcarrierCategory::Unallocated) ++available;

  while (available > 0) {
    const int k = argmax_power_user(state, active);
    if (k < 0) break;
    ++state.stats.oma_iterations;

    int best_n = -1, best_r = -1;
    double best = -1.0;
    for (int n = 0; n < S; ++n) {
      if (state.category[n] != SubcarrierCategory::Unallocated) continue;
      for (int r = 0; r < R; ++r) {
        const double g = channel.gain(k, n, r);
        if (g > best) {
          best = g;
          best_n = n;
          best_r = r;
        }
      }
    }

    UserState& u = state.users[k];
    const double gamma = best * best / noise;
    const double w = u.account.waterline_mw();
    if (!admit_check(w, gamma)) {
      active[k] = 0;
      continue;
    }
    const double delta_p = add_power_delta(w, u.account.size(), gamma);
    if (delta_p < -rho) {
      u.account.add_subcarrier(gamma, best_n, best_r);
      u.oma_gain_sequence.push_back(best);
      state.sole_owner[best_n] = k;
      state.sole_rrh[best_n] = best_r;
      state.category[best_n] = SubcarrierCategory::NonMux;
      --available;
    } else {
      active[k] = 0;
    }
  }
}

void pair_srrh(AllocationState& state, const ChannelTensor& channel,
               const SystemParams& params, SrrhPowerRule rule) {
  const int S = channel.num_subcarriers();
  const double noise = channel.noise_mw();
  const double rho = params.power_threshold_mw();
  const double mu = params.safety_margin;

  std::vector<char> active(state.users.size(), 1);
  while (true) {
    const int k2 = argmax_power_user(state, active);
    if (k2 < 0) break;
    ++state.stats.pairing_iterations;
    UserState& u2 = state.users[k2];
    if (u2.account.empty()) {
      retire_user(state, active, k2);
      continue;
    }

    int best_n = -1;
    double best_p1 = 0.0;
    SecondUserEval best_eval;
    double best_delta = std::numeric_limits<double>::infinity();
    const double w2 = u2.account.waterline_mw();
    const int n2 = u2.account.size();

    for (int n = 0; n < S; ++n) {
      const int k1 = state.sole_owner[n];
      if (k1 < 0 || k1 == k2) continue;
      const int r = state.sole_rrh[n];
      const double h1 = channel.gain(k1, n, r);
      const double h2 = channel.gain(k2, n, r);
      if (!(h2 < h1)) continue;

      const double p1 = state.users[k1].account.power_on(n);
      const double g1_sq = h1 * h1;
      const double g2_sq = h2 * h2;
      double p2;
      if (rule == SrrhPowerRule::Ftpa)
        p2 = ftpa_power(p1, g1_sq, g2_sq, params.ftpa_alpha);
      else
        p2 = lpo_power(w2, n2, p1, g2_sq, noise, mu);

      const double gamma_eff = g2_sq / (p1 * g2_sq + noise);
      SecondUserEval eval = evaluate_second_user(u2.account, gamma_eff, p2);
      if (!eval.ok) continue;
      if (eval.delta_p_mw < best_delta) {
        best_delta = eval.delta_p_mw;
        best_n = n;
        best_p1 = p1;
        best_eval = std::move(eval);
      }
    }

    if (best_n >= 0 && best_delta < -rho) {
      const int k1 = state.sole_owner[best_n];
      const int r = state.sole_rrh[best_n];
      commit_pair(state, best_n, k1, k2, r, r, best_p1, best_eval,
                  SubcarrierCategory::SingleSicSrrh);
    } else {
      retire_user(state, active, k2);
    }
  }
}

void pair_mutsic(AllocationState& state, const ChannelTensor& channel,
                 const SystemParams& params, MutSicVariant variant) {
  const int S = channel.num_subcarriers();
  const int R = channel.num_rrh();
  const double noise = channel.noise_mw();
  const double rho = params.power_threshold_mw();
  const double mu = params.safety_margin;

  std::vector<char> active(state.users.size(), 1);
  while (true) {
    const int k2 = argmax_power_user(state, active);
    if (k2 < 0) break;
    ++state.stats.pairing_iterations;
    UserState& u2 = state.users[k2];
    if (u2.account.empty()) {
      retire_user(state, active, k2);
      continue;
    }
    const double w2 = u2.account.waterline_mw();

    struct Best {
      int n = -1, r1 = -1, r2 = -1, k1 = -1;
      AdjustOutcome outcome;
      JointAdjustInputs inputs;
      double delta = std::numeric_limits<double>::infinity();
    } best;

    for (int n = 0; n < S; ++n) {
      const int k1 = state.sole_owner[n];
      if (k1 < 0 || k1 == k2) continue;
      const int r1 = state.sole_rrh[n];
      const UserState& u1 = state.users[k1];
      for (int r2 = 0; r2 < R; ++r2) {
        if (r2 == r1) continue;
        // Both users must be able to cancel: cross gains dominate.
        if (!(channel.gain(k1, n, r2) >= channel.gain(k2, n, r2))) continue;
        if (!(channel.gain(k2, n, r1) >= channel.gain(k1, n, r1))) continue;
        const double gamma2 = channel.gain_sq(k2, n, r2) / noise;
        if (!admit_check(w2, gamma2)) continue;

        const double p1 = u1.account.power_on(n);
        const double g2_k1_r1 = channel.gain_sq(k1, n, r1);
        const double g2_k1_r2 = channel.gain_sq(k1, n, r2);
        const double g2_k2_r1 = channel.gain_sq(k2, n, r1);
        const double g2_k2_r2 = channel.gain_sq(k2, n, r2);
        const double lower = g2_k1_r1 / g2_k1_r2;
        const double upper = g2_k2_r1 / g2_k2_r2;

        AdjustOutcome outcome;
        JointAdjustInputs inputs;
        inputs.k1_account = &u1.account;
        inputs.k2_account = &u2.account;
        inputs.subcarrier = n;
        inputs.g2_k1_r1 = g2_k1_r1;
        inputs.g2_k1_r2 = g2_k1_r2;
        inputs.g2_k2_r1 = g2_k2_r1;
        inputs.g2_k2_r2 = g2_k2_r2;
        inputs.noise_mw = noise;
        inputs.mu = mu;

        switch (variant) {
          case MutSicVariant::Uc: {
            const double p2 =
                waterline_after_add(w2, u2.account.size(), gamma2) - 1.0 / gamma2;
            SecondUserEval eval = evaluate_second_user(u2.account, gamma2, p2);
            if (!eval.ok) continue;
            outcome.ok = true;
            outcome.case_tag = AdjustCase::Interior;
            outcome.p1_mw = p1;
            outcome.p2_mw = p2;
            outcome.delta_p_total_mw = eval.delta_p_mw;
            outcome.k2_eval = std::move(eval);
            break;
          }
          case MutSicVariant::Dpa:
          case MutSicVariant::Sopad: {
            outcome = dpa_adjust(u2.account, gamma2, p1, lower, upper, mu);
            break;
          }
          case MutSicVariant::Opad: {
            outcome = opad_joint(inputs);
            state.stats.root_solves += outcome.root_solves;
            break;
          }
        }
        if (!outcome.ok) continue;
        if (outcome.delta_p_total_mw < best.delta) {
          best.delta = outcome.delta_p_total_mw;
          best.n = n;
          best.r1 = r1;
          best.r2 = r2;
          best.k1 = k1;
          best.outcome = std::move(outcome);
          best.inputs = inputs;
        }
      }
    }

    if (best.n >= 0 && variant == MutSicVariant::Sopad) {
      // One joint refinement on the retained candidate only.
      AdjustOutcome refined = sopad_refine(best.inputs, best.outcome);
      state.stats.root_solves += refined.root_solves - best.outcome.root_solves;
      best.outcome = std::move(refined);
      best.delta = best.outcome.delta_p_total_mw;
    }

    if (best.n >= 0 && best.delta < -rho) {
      if (best.outcome.p1_changed) {
        commit_pair_refrozen(state, best.n, best.k1, k2, best.r1, best.r2,
                             best.outcome.k1_eval, best.outcome.k2_eval,
                             SubcarrierCategory::MutualSic);
      } else {
        commit_pair(state, best.n, best.k1, k2, best.r1, best.r2, best.outcome.p1_mw,
                    best.outcome.k2_eval, SubcarrierCategory::MutualSic);
      }
      ++state.stats.mutsic_pairs;
      PairLink link;
      link.g2_k1_r1 = best.inputs.g2_k1_r1;
      link.g2_k1_r2 = best.inputs.g2_k1_r2;
      link.g2_k2_r1 = best.inputs.g2_k2_r1;
      link.g2_k2_r2 = best.inputs.g2_k2_r2;
      link.noise_mw = noise;
      link.p1_mw = state.pairs.back().p1_mw;
      link.p2_mw = state.pairs.back().p2_mw;
      const auto surpluses = mutual_sic_exact_surpluses(link);
      if (surpluses.first < 0.0 || surpluses.second < 0.0)
        ++state.stats.mutsic_exact_violations;
    } else {
      retire_user(state, active, k2);
    }
  }
}

void pair_single_sic(AllocationState& state, const ChannelTensor& channel,
                     const SystemParams& params) {
  const int S = channel.num_subcarriers();
  const int R = channel.num_rrh();
  const double noise = channel.noise_mw();
  const double rho = params.power_threshold_mw();
  const double mu = params.safety_margin;

  std::vector<char> active(state.users.size(), 1);
  while (true) {
    const int k2 = argmax_power_user(state, active);
    if (k2 < 0) break;
    ++state.stats.pairing_iterations;
    UserState& u2 = state.users[k2];
    if (u2.account.empty()) {
      retire_user(state, active, k2);
      continue;
    }
    const double w2 = u2.account.waterline_mw();
    const int n2 = u2.account.size();

    struct Best {
      int n = -1, rc = -1, k1 = -1;
      double p1 = 0.0;
      SecondUserEval eval;
      double delta = std::numeric_limits<double>::infinity();
    } best;

    for (int n = 0; n < S; ++n) {
      const int k1 = state.sole_owner[n];
      if (k1 < 0 || k1 == k2) continue;
      const int r1 = state.sole_rrh[n];
      // The added user must not be able to cancel: it is the weaker one at
      // the first user's antenna.
      if (!(channel.gain(k2, n, r1) < channel.gain(k1, n, r1))) continue;
      const double p1 = state.users[k1].account.power_on(n);
      const double g2_k1_r1 = channel.gain_sq(k1, n, r1);
      const double g2_k2_r1 = channel.gain_sq(k2, n, r1);

      for (int rc = 0; rc < R; ++rc) {
        // The first user must be able to decode the added user's signal.
        if (rc != r1 && !(channel.gain(k1, n, rc) >= channel.gain(k2, n, rc))) continue;
        const double g2_k1_rc = channel.gain_sq(k1, n, rc);
        const double g2_k2_rc = channel.gain_sq(k2, n, rc);

        const double gamma_eff = g2_k2_rc / (p1 * g2_k2_r1 + noise);
        const double floor =
            p1 * std::max(g2_k1_r1 / g2_k1_rc, g2_k2_r1 / g2_k2_rc) * (1.0 + mu);
        const double p2 = std::max(lpo_interior_power(w2, n2, gamma_eff), floor);

        SecondUserEval eval = evaluate_second_user(u2.account, gamma_eff, p2);
        if (!eval.ok) continue;
        if (eval.delta_p_mw < best.delta) {
          best.delta = eval.delta_p_mw;
          best.n = n;
          best.rc = rc;
          best.k1 = k1;
          best.p1 = p1;
          best.eval = std::move(eval);
        }
      }
    }

    if (best.n >= 0 && best.delta < -rho) {
      const int r1 = state.sole_rrh[best.n];
      const SubcarrierCategory cat = best.rc == r1 ? SubcarrierCategory::SingleSicSrrh
                                                   : SubcarrierCategory::SingleSicDrrh;
      commit_pair(state, best.n, best.k1, k2, r1, best.rc, best.p1, best.eval, cat);
    } else {
      retire_user(state, active, k2);
    }
  }
}

ChannelTensor effective_channel(MethodId method, const ChannelTensor& channel) {
  if (method == MethodId::OMA_CBS || method == MethodId::NOMA_CBS)
    return channel.restricted_to_first_rrh();
  return channel;
}

AllocationState run_method(MethodId method, const ChannelTensor& channel,
                           const SystemParams& params) {
  const ChannelTensor view = effective_channel(method, channel);
  AllocationState state = worst_best_h_init(view, params);
  state.method = method;
  oma_assign(state, view, params);
  switch (method) {
    case MethodId::OMA_CBS:
    case MethodId::OMA_DBS:
      break;
    case MethodId::NOMA_CBS:
    case MethodId::NOMA_DBS_SRRH:
      pair_srrh(state, view, params, SrrhPowerRule::Ftpa);
      break;
    case MethodId::NOMA_DBS_SRRH_LPO:
      pair_srrh(state, view, params, SrrhPowerRule::Lpo);
      break;
    case MethodId::NOMA_DBS_MUTSIC_UC:
      pair_mutsic(state, view, params, MutSicVariant::Uc);
      break;
    case MethodId::NOMA_DBS_MUTSIC_DPA:
      pair_mutsic(state, view, params, MutSicVariant::Dpa);
      break;
    case MethodId::NOMA_DBS_MUTSIC_OPAD:
      pair_mutsic(state, view, params, MutSicVariant::Opad);
      break;
    case MethodId::NOMA_DBS_MUTSIC_SOPAD:
      pair_mutsic(state, view, params, MutSicVariant::Sopad);
      break;
    case MethodId::NOMA_DBS_MUT_AND_SINGSIC:
      pair_mutsic(state, view, params, MutSicVariant::Sopad);
      pair_single_sic(state, view, params);
      break;
  }
  return state;
}

AuditReport audit(const AllocationState& state, const ChannelTensor& channel,
                  const SystemParams& params, double rate_tol) {
  const ChannelTensor view = effective_channel(state.method, channel);
  const double noise = view.noise_mw();
  const double sc_bw = params.bandwidth / params.num_subcarriers;
  const int K = static_cast<int>(state.users.size());

  AuditReport report;
  report.total_power_mw = state.total_power_mw();
  report.categories = state.category_counts();
  report.mutsic_pairs = state.stats.mutsic_pairs;
  report.mutsic_exact_violations = state.stats.mutsic_exact_violations;
  report.root_solves = state.stats.root_solves;
  report.per_user_rate_bps.assign(K, 0.0);

  // Sole subcarriers deliver at the waterline.
  for (int k = 0; k < K; ++k) {
    const WaterfillAccount& acct = state.users[k].account;
    const double w = acct.empty() ? 0.0 : acct.waterline_mw();
    for (const auto& e : acct.entries()) {
      const double p = w - 1.0 / e.gain_norm;
      report.per_user_rate_bps[k] += sc_bw * std::log2(1.0 + p * e.gain_norm);
      if (p < -kZeroPowerEps) report.constraints_ok = false;
    }
  }

  // Paired subcarriers deliver at their frozen powers.
  for (const auto& pr : state.pairs) {
    const double g2_first = view.gain_sq(pr.first_user, pr.subcarrier, pr.r1);
    report.per_user_rate_bps[pr.first_user] +=
        rate_single(pr.p1_mw, g2_first, noise, sc_bw);

    switch (pr.category) {
      case SubcarrierCategory::MutualSic: {
        const double g2_second = view.gain_sq(pr.second_user, pr.subcarrier, pr.r2);
        report.per_user_rate_bps[pr.second_user] +=
            rate_single(pr.p2_mw, g2_second, noise, sc_bw);
        if (state.method != MethodId::NOMA_DBS_MUTSIC_UC) {
          const double lower = view.gain_sq(pr.first_user, pr.subcarrier, pr.r1) /
                               view.gain_sq(pr.first_user, pr.subcarrier, pr.r2);
          const double upper = view.gain_sq(pr.second_user, pr.subcarrier, pr.r1) /
                               view.gain_sq(pr.second_user, pr.subcarrier, pr.r2);
          const double ratio = pr.p2_mw / pr.p1_mw;
          if (ratio < lower * (1.0 - kAuditSlack) || ratio > upper * (1.0 + kAuditSlack))
            report.constraints_ok = false;
        }
        break;
      }
      case SubcarrierCategory::SingleSicSrrh: {
        const double g2_second = view.gain_sq(pr.second_user, pr.subcarrier, pr.r2);
        report.per_user_rate_bps[pr.second_user] +=
            rate_second(pr.p2_mw, pr.p1_mw, g2_second, noise, sc_bw);
        const bool lpo_rule = state.method == MethodId::NOMA_DBS_SRRH_LPO ||
                              state.method == MethodId::NOMA_DBS_MUT_AND_SINGSIC;
        const double required =
            pr.p1_mw * (lpo_rule ? 1.0 + params.safety_margin : 1.0);
        if (pr.p2_mw < required * (1.0 - kAuditSlack)) report.constraints_ok = false;
        break;
      }
      case SubcarrierCategory::SingleSicDrrh: {
        const double g2_sig = view.gain_sq(pr.second_user, pr.subcarrier, pr.r2);
        const double g2_int = view.gain_sq(pr.second_user, pr.subcarrier, pr.r1);
        report.per_user_rate_bps[pr.second_user] +=
            sc_bw * std::log2(1.0 + pr.p2_mw * g2_sig / (pr.p1_mw * g2_int + noise));
        PairLink link;
        link.g2_k1_r1 = view.gain_sq(pr.first_user, pr.subcarrier, pr.r1);
        link.g2_k1_r2 = view.gain_sq(pr.first_user, pr.subcarrier, pr.r2);
        link.g2_k2_r1 = g2_int;
        link.g2_k2_r2 = g2_sig;
        link.noise_mw = noise;
        link.p1_mw = pr.p1_mw * (1.0 - kAuditSlack);
        link.p2_mw = pr.p2_mw * (1.0 + kAuditSlack);
        if (!single_sic_drrh_ok(link)) report.constraints_ok = false;
        break;
      }
      default:
        report.constraints_ok = false; // a pair record must carry a pair tag
        break;
    }
    if (pr.p1_mw < 0.0 || pr.p2_mw < 0.0) report.constraints_ok = false;
  }

  for (int k = 0; k < K; ++k) {
    const double err = std::fabs(report.per_user_rate_bps[k] - params.rate_req) /
                       std::max(params.rate_req, 1.0);
    report.max_rate_rel_err = std::max(report.max_rate_rel_err, err);
  }
  report.rate_ok = report.max_rate_rel_err <= rate_tol;
  return report;
}

} // namespace nomadbs
