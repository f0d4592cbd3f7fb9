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

#include "allocate.hpp"
#include "params.hpp"

namespace nomadbs {

enum class SweepAxis { None, RateReq, NumUsers, NumRrh };

const char* sweep_axis_name(SweepAxis axis);

struct CampaignConfig {
  SystemParams params;
  std::vector<MethodId> methods;
  SweepAxis axis = SweepAxis::None;
  std::vector<double> sweep_values; // one implicit point when axis is None
  int trials = 0;                   // 0: use params.trials
  std::string output;               // default CSV path, may be overridden

  int effective_trials() const { return trials > 0 ? trials : params.trials; }
  int num_points() const {
    return axis == SweepAxis::None ? 1 : static_cast<int>(sweep_values.size());
  }
  SystemParams params_at(int point) const;
};

CampaignConfig campaign_from_json_text(const std::string& json_text);
CampaignConfig campaign_from_json_file(const std::string& path);

struct TrialRow {
  std::string method;
  std::string sweep_axis;
  double sweep_value = 0.0;
  int trial = 0;
  uint64_t seed = 0;          // per-trial substream seed (replay handle)
  double total_power_mw = 0.0;
  CategoryCounts cats;
  bool audit_ok = false;
  double wall_ms = 0.0;
};

struct CampaignResult {
  CampaignConfig config;
  std::vector<TrialRow> rows; // canonical order: (point, trial, method)
  int audit_failures = 0;
  int allocation_errors = 0;
};

/// Runs every (sweep point, trial, method) cell. All methods of a trial
/// consume the identical channel realization. Deterministic under a fixed
/// seed for any worker count; with record_timing false, wall_ms is written
/// as zero so output files are byte-reproducible.
CampaignResult run_campaign(const CampaignConfig& config, int workers,
                            int64_t seed_override = -1, bool record_timing = true);

void write_campaign_csv(const CampaignResult& result, const std::string& path);

/// Aggregation per (method, sweep point): power mean/std in W, mean
/// category counts, and the share of subcarriers carrying a second user.
std::string summarize_rows(const std::vector<TrialRow>& rows, int num_subcarriers);

/// Reads a campaign CSV back (schema produced by write_campaign_csv).
std::vector<TrialRow> read_campaign_csv(const std::string& path, int* num_subcarriers);

std::string summarize_csv_file(const std::string& path);

} // namespace nomadbs
