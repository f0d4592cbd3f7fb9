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
#include <vector>

namespace nomadbs {

/// One user's waterfilling account over the subcarriers it holds alone.
///
/// All gains are pre-normalized by the subcarrier noise power
/// (gain_norm = h^2 / sigma^2, in 1/mW) and all rate bookkeeping is carried
/// in log2 domain: the waterline is always recomputed from the running sums,
///     log2(w) = (rate_norm - sum(log2 gain)) / N,
/// so the rate target is conserved by construction across every mutation.
/// Entries stay sorted by decreasing gain; ties break on lowest subcarrier
/// then lowest antenna index for determinism.
class WaterfillAccount {
public:
  struct Entry {
    double gain_norm;  // h^2 / sigma^2, 1/mW
    double log2_gain;
    int subcarrier;
    int rrh;
  };

  WaterfillAccount() = default;

  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  double rate_norm() const { return rate_norm_; }
  const std::vector<Entry>& entries() const { return entries_; }

  double log2_waterline() const {
    return (rate_norm_ - sum_log2_gain_) / static_cast<double>(entries_.size());
  }
  double waterline_mw() const { return std::exp2(log2_waterline()); }

  /// Power on one owned subcarrier: w - 1/gain.
  double power_mw(const Entry& e) const { return waterline_mw() - 1.0 / e.gain_norm; }
  double power_on(int subcarrier) const;
  bool holds(int subcarrier) const;
  const Entry* find(int subcarrier) const;

  double total_power_mw() const {
    if (entries_.empty()) return 0.0;
    const double w = waterline_mw();
    double total = 0.0;
    for (const auto& e : entries_) total += w - 1.0 / e.gain_norm;
    return total;
  }

  /// Rate actually delivered at the current waterline, bits per channel use
  /// summed over the set. Equals rate_norm() up to roundoff.
  double delivered_rate_norm() const {
    const double lw = log2_waterline();
    double rate = 0.0;
    for (const auto& e : entries_) rate += lw + e.log2_gain;
    return rate;
  }

  void set_rate_norm(double rate_norm) { rate_norm_ = rate_norm; }
  void add_rate_norm(double delta) { rate_norm_ += delta; }

  /// Inserts a subcarrier without touching the rate target (the recursive
  /// waterline update). Returns the power change of the account.
  double add_subcarrier(double gain_norm, int subcarrier, int rrh);

  /// Removes a subcarrier together with `frozen_rate_norm` bits of the rate
  /// target (the subcarrier keeps delivering them at a frozen power outside
  /// this account). Removing at the currently delivered rate leaves the
  /// waterline unchanged.
  void freeze_out(int subcarrier, double frozen_rate_norm);

  /// Drops every entry with strictly negative power, weakest gains first,
  /// in one batch per pass, repeating until the account is clean. Returns
  /// false when the set empties while rate remains to be carried.
  bool remove_negative_power(std::vector<Entry>* removed = nullptr);

  /// Drops entries whose power is below `eps_mw` (released at retirement).
  void release_zero_power(double eps_mw, std::vector<Entry>* removed = nullptr);

  std::vector<double> powers_from_waterline() const;

private:
  void insert_sorted(const Entry& e);

  std::vector<Entry> entries_; // sorted by gain desc, then subcarrier/rrh asc
  double rate_norm_ = 0.0;
  double sum_log2_gain_ = 0.0;
};

/// Closed-form waterline for a given gain set and rate target (log domain).
double waterline_from_rate(const std::vector<double>& gains_norm, double rate_norm);

/// Admission rule: adding a subcarrier lowers the waterline (and strictly
/// decreases total power) iff gain_norm > 1 / waterline.
inline bool admit_check(double waterline_mw, double gain_norm) {
  return gain_norm > 1.0 / waterline_mw;
}

/// Waterline after adding one gain: w' = (w^N / g)^(1/(N+1)).
double waterline_after_add(double waterline_mw, int n_before, double gain_norm);

/// Power change of the add: (N+1) w' - N w - 1/g.
double add_power_delta(double waterline_mw, int n_before, double gain_norm);

/// Waterline rescale for a change of the carried rate: w' = 2^(dR/N) * w.
double rescale_waterline_for_rate_delta(double waterline_mw, int n, double rate_delta_norm);

/// Account power change when a pairing adds `p_pair` of frozen power and
/// shifts the waterline with no subcarrier removal: N (w' - w) + p_pair.
double pairing_power_delta(int n, double w_old, double w_new, double p_pair_mw);

/// Outcome of evaluating a prospective second-user assignment at power
/// p2 against an account (waterline rescale + batch removal as needed).
struct SecondUserEval {
  bool ok = false;                  // false: the rate cannot be carried
  double p2_mw = 0.0;
  double rate_gain_norm = 0.0;      // bits/use gained on the new subcarrier
  double delta_p_mw = 0.0;          // change of the user's total power
  WaterfillAccount account_after;   // account with the rescale applied
  std::vector<WaterfillAccount::Entry> released;
};

/// gamma_eff is the SINR slope of the candidate subcarrier for this user
/// (h^2/sigma^2 when interference-free, h^2/(p1 h_i^2 + sigma^2) under a
/// first user's interference).
SecondUserEval evaluate_second_user(const WaterfillAccount& account, double gamma_eff,
                                    double p2_mw);

/// Outcome of re-freezing a first user's paired subcarrier at a new power
/// (used by the joint power adjustment): the subcarrier leaves the sole set
/// at `p1_new` and the waterline absorbs the rate difference.
struct FirstUserEval {
  bool ok = false;
  double p1_mw = 0.0;
  double delta_p_mw = 0.0;
  WaterfillAccount account_after;
  std::vector<WaterfillAccount::Entry> released;
};

FirstUserEval evaluate_first_user_refreeze(const WaterfillAccount& account, int subcarrier,
                                           double p1_new_mw);

} // namespace nomadbs
