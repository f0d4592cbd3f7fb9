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

#include "waterfill.hpp"

#include <algorithm>
#include <stdexcept>

namespace nomadbs {

double WaterfillAccount::power_on(int subcarrier) const {
  const Entry* e = find(subcarrier);
  if (!e) throw std::logic_error("subcarrier not in account");
  return power_mw(*e);
}

bool WaterfillAccount::holds(int subcarrier) const { return find(subcarrier) != nullptr; }

const WaterfillAccount::Entry* WaterfillAccount::find(int subcarrier) const {
  for (const auto& e : entries_)
    if (e.subcarrier == subcarrier) return &e;
  return nullptr;
}

void WaterfillAccount::insert_sorted(const Entry& e) {
  auto pos = std::lower_bound(entries_.begin(), entries_.end(), e,
                              [](const Entry& a, const Entry& b) {
                                if (a.gain_norm != b.gain_norm) return a.gain_norm > b.gain_norm;
                                if (a.subcarrier != b.subcarrier) return a.subcarrier < b.subcarrier;
                                return a.rrh < b.rrh;
                              });
  entries_.insert(pos, e);
  sum_log2_gain_ += e.log2_gain;
}

double WaterfillAccount::add_subcarrier(double gain_norm, int subcarrier, int rrh) {
  const double before = total_power_mw();
  insert_sorted({gain_norm, std::log2(gain_norm), subcarrier, rrh});
  return total_power_mw() - before;
}

void WaterfillAccount::freeze_out(int subcarrier, double frozen_rate_norm) {
  for (auto it = entries_.begin(); it != entries_.end(); ++it) {
    if (it->subcarrier == subcarrier) {
      sum_log2_gain_ -= it->log2_gain;
      rate_norm_ -= frozen_rate_norm;
      entries_.erase(it);
      return;
    }
  }
  throw std::logic_error("freeze_out: subcarrier not in account");
}

bool WaterfillAccount::remove_negative_power(std::vector<Entry>* removed) {
  while (!entries_.empty()) {
    const double w = waterline_mw();
    // Negative powers, if any, sit at the weak tail of the sorted list.
    int first_bad = static_cast<int>(entries_.size());
    while (first_bad > 0 && w - 1.0 / entries_[first_bad - 1].gain_norm < 0.0) --first_bad;
    if (first_bad == static_cast<int>(entries_.size())) return true;
    for (int i = first_bad; i < static_cast<int>(entries_.size()); ++i) {
      sum_log2_gain_ -= entries_[i].log2_gain;
      if (removed) removed->push_back(entries_[i]);
    }
    entries_.resize(first_bad);
  }
  // Everything was removed: feasible only if the remaining rate target is
  // zero (negative would mean the user's other subcarriers overshoot it).
  return std::fabs(rate_norm_) <= 1e-9;
}

void WaterfillAccount::release_zero_power(double eps_mw, std::vector<Entry>* removed) {
  while (!entries_.empty()) {
    const double w = waterline_mw();
    int first_bad = static_cast<int>(entries_.size());
    while (first_bad > 0 && w - 1.0 / entries_[first_bad - 1].gain_norm < eps_mw) --first_bad;
    if (first_bad == static_cast<int>(entries_.size())) return;
    if (first_bad == 0 && rate_norm_ > 1e-9) return; // keep the last carriers
    for (int i = first_bad; i < static_cast<int>(entries_.size()); ++i) {
      sum_log2_gain_ -= entries_[i].log2_gain;
      if (removed) removed->push_back(entries_[i]);
    }
    entries_.resize(first_bad);
  }
}

std::vector<double> WaterfillAccount::powers_from_waterline() const {
  std::vector<double> powers;
  powers.reserve(entries_.size());
  const double w = waterline_mw();
  for (const auto& e : entries_) powers.push_back(w - 1.0 / e.gain_norm);
  return powers;
}

double waterline_from_rate(const std::vector<double>& gains_norm, double rate_norm) {
  if (gains_norm.empty()) throw std::invalid_argument("waterline_from_rate: empty gain set");
  double sum_log2 = 0.0;
  for (double g : gains_norm) sum_log2 += std::log2(g);
  return std::exp2((rate_norm - sum_log2) / static_cast<double>(gains_norm.size()));
}

double waterline_after_add(double waterline_mw, int n_before, double gain_norm) {
  const double lw = std::log2(waterline_mw);
  return std::exp2((n_before * lw - std::log2(gain_norm)) / (n_before + 1.0));
}

double add_power_delta(double waterline_mw, int n_before, double gain_norm) {
  const double w_new = waterline_after_add(waterline_mw, n_before, gain_norm);
  return (n_before + 1.0) * w_new - n_before * waterline_mw - 1.0 / gain_norm;
}

double rescale_waterline_for_rate_delta(double waterline_mw, int n, double rate_delta_norm) {
  return std::exp2(rate_delta_norm / static_cast<double>(n)) * waterline_mw;
}

double pairing_power_delta(int n, double w_old, double w_new, double p_pair_mw) {
  return n * (w_new - w_old) + p_pair_mw;
}

SecondUserEval evaluate_second_user(const WaterfillAccount& account, double gamma_eff,
                                    double p2_mw) {
  SecondUserEval eval;
  eval.p2_mw = p2_mw;
  eval.rate_gain_norm = std::log2(1.0 + p2_mw * gamma_eff);
  if (account.empty()) return eval; // no sole set to rebalance against
  const double before = account.total_power_mw();
  eval.account_after = account;
  eval.account_after.add_rate_norm(-eval.rate_gain_norm);
  if (!eval.account_after.remove_negative_power(&eval.released)) return eval;
  eval.delta_p_mw = (eval.account_after.total_power_mw() + p2_mw) - before;
  eval.ok = true;
  return eval;
}

FirstUserEval evaluate_first_user_refreeze(const WaterfillAccount& account, int subcarrier,
                                           double p1_new_mw) {
  FirstUserEval eval;
  eval.p1_mw = p1_new_mw;
  const WaterfillAccount::Entry* e = account.find(subcarrier);
  if (!e) return eval;
  const double rate_new = std::log2(1.0 + p1_new_mw * e->gain_norm);
  const double before = account.total_power_mw();
  eval.account_after = account;
  eval.account_after.freeze_out(subcarrier, rate_new);
  if (eval.account_after.empty()) {
    // No sole subcarrier remains to absorb a rate change: only a re-freeze
    // at the delivered rate is feasible.
    if (std::fabs(eval.account_after.rate_norm()) > 1e-6) return eval;
  } else {
    if (!eval.account_after.remove_negative_power(&eval.released)) return eval;
  }
  eval.delta_p_mw = (eval.account_after.total_power_mw() + p1_new_mw) - before;
  eval.ok = true;
  return eval;
}

} // namespace nomadbs
