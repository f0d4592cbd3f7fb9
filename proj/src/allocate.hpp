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

#include <string>
#include <vector>

#include "channel.hpp"
#include "params.hpp"
#include "waterfill.hpp"

namespace nomadbs {

enum class MethodId {
  OMA_CBS,
  NOMA_CBS,
  OMA_DBS,
  NOMA_DBS_SRRH,
  NOMA_DBS_SRRH_LPO,
  NOMA_DBS_MUTSIC_UC,
  NOMA_DBS_MUTSIC_DPA,
  NOMA_DBS_MUTSIC_OPAD,
  NOMA_DBS_MUTSIC_SOPAD,
  NOMA_DBS_MUT_AND_SINGSIC,
};

const char* method_name(MethodId id);
bool method_from_name(const std::string& name, MethodId* out);
std::vector<MethodId> all_methods();

enum class SubcarrierCategory { Unallocated, NonMux, MutualSic, SingleSicSrrh, SingleSicDrrh };

struct CategoryCounts {
  int non_mux = 0;
  int mutual_sic = 0;
  int single_sic_srrh = 0;
  int single_sic_drrh = 0;
  int unallocated = 0;
};

/// Frozen roles of a paired subcarrier; powers never move once recorded.
struct PairRecord {
  int subcarrier = -1;
  int first_user = -1;
  int second_user = -1;
  int r1 = -1;  // antenna powering the first user
  int r2 = -1;  // antenna powering the second user
  double p1_mw = 0.0;
  double p2_mw = 0.0;
  SubcarrierCategory category = SubcarrierCategory::Unallocated;
};

struct UserState {
  WaterfillAccount account;           // subcarriers this user holds alone
  double frozen_power_mw = 0.0;       // power committed on paired subcarriers
  std::vector<double> oma_gain_sequence; // amplitudes in assignment order

  double total_power_mw() const { return account.total_power_mw() + frozen_power_mw; }
};

struct AllocStats {
  int oma_iterations = 0;
  int pairing_iterations = 0;
  int root_solves = 0;
  int mutsic_pairs = 0;
  int mutsic_exact_violations = 0; // accepted pairs whose exact surplus is negative
};

struct AllocationState {
  MethodId method = MethodId::OMA_DBS;
  int num_subcarriers = 0;
  std::vector<UserState> users;
  std::vector<int> sole_owner;  // per subcarrier: user holding it alone, or -1
  std::vector<int> sole_rrh;    // antenna powering the sole owner
  std::vector<SubcarrierCategory> category;
  std::vector<PairRecord> pairs;
  AllocStats stats;

  double total_power_mw() const;
  CategoryCounts category_counts() const;
};

/// Phase 1: worst channel first. Users ordered by ascending best gain; each
/// claims its best remaining (subcarrier, antenna) pair and starts with the
/// full rate target on it.
AllocationState worst_best_h_init(const ChannelTensor& channel, const SystemParams& params);

/// Phase 2: single-user assignment. The most power-hungry user repeatedly
/// takes its best admissible remaining subcarrier while the power decrease
/// beats the threshold; otherwise it retires.
void oma_assign(AllocationState& state, const ChannelTensor& channel,
                const SystemParams& params);

enum class SrrhPowerRule { Ftpa, Lpo };

/// Phase 3: same-antenna pairing with FTPA or locally optimized second-user
/// power. Accepted pairs freeze both powers; retiring users release their
/// zero-power subcarriers.
void pair_srrh(AllocationState& state, const ChannelTensor& channel,
               const SystemParams& params, SrrhPowerRule rule);

enum class MutSicVariant { Uc, Dpa, Opad, Sopad };

/// Pairing over candidates powered by a second antenna where both users can
/// cancel each other, with the variant's power adjustment.
void pair_mutsic(AllocationState& state, const ChannelTensor& channel,
                 const SystemParams& params, MutSicVariant variant);

/// Follow-up pass pairing the remaining solo subcarriers so that only the
/// first user cancels (same or different antenna), with locally optimized
/// power for the added user.
void pair_single_sic(AllocationState& state, const ChannelTensor& channel,
                     const SystemParams& params);

/// Channel view a method operates on (centralized methods see antenna 0 only).
ChannelTensor effective_channel(MethodId method, const ChannelTensor& channel);

AllocationState run_method(MethodId method, const ChannelTensor& channel,
                           const SystemParams& params);

struct AuditReport {
  bool rate_ok = true;
  bool constraints_ok = true;
  double max_rate_rel_err = 0.0;
  double total_power_mw = 0.0;
  CategoryCounts categories;
  std::vector<double> per_user_rate_bps;
  int mutsic_pairs = 0;
  int mutsic_exact_violations = 0;
  int root_solves = 0;

  bool ok() const { return rate_ok && constraints_ok; }
};

/// Recomputes every user's delivered rate and every pairing constraint from
/// the final powers and gains; independent of the allocation bookkeeping.
AuditReport audit(const AllocationState& state, const ChannelTensor& channel,
                  const SystemParams& params, double rate_tol = 1e-6);

} // namespace nomadbs
