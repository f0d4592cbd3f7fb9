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

#include "nomadbs.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>

#include "campaign.hpp"
#include "channel.hpp"
#include "oracle.hpp"
#include "params.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nomadbs_status fail(nomadbs_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class Fn>
nomadbs_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const nomadbs::ConfigError& e) {
    return fail(e.code() == nomadbs::ConfigErrorCode::IoFailure ? NOMADBS_ERR_IO
                                                                : NOMADBS_ERR_INVALID_CONFIG,
                e.what());
  } catch (const std::exception& e) {
    return fail(NOMADBS_ERR_INTERNAL, e.what());
  }
}

} // namespace

struct nomadbs_config {
  nomadbs::CampaignConfig config;
};

extern "C" {

const char* nomadbs_version(void) { return "1.0.0"; }

const char* nomadbs_last_error(void) { return g_last_error.c_str(); }

void nomadbs_string_free(char* s) { std::free(s); }

nomadbs_status nomadbs_config_load(const char* path, nomadbs_config** out) {
  if (!path || !out) return fail(NOMADBS_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    auto* handle = new nomadbs_config{nomadbs::campaign_from_json_file(path)};
    *out = handle;
    return NOMADBS_OK;
  });
}

nomadbs_status nomadbs_config_parse(const char* json_text, nomadbs_config** out) {
  if (!json_text || !out) return fail(NOMADBS_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    auto* handle = new nomadbs_config{nomadbs::campaign_from_json_text(json_text)};
    *out = handle;
    return NOMADBS_OK;
  });
}

void nomadbs_config_free(nomadbs_config* config) { delete config; }

nomadbs_status nomadbs_config_params_json(const nomadbs_config* config, char** json_out) {
  if (!config || !json_out) return fail(NOMADBS_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    *json_out = dup_string(nomadbs::params_to_json_text(config->config.params));
    return NOMADBS_OK;
  });
}

nomadbs_status nomadbs_campaign_run(const nomadbs_config* config, const char* output_csv,
                                    int workers, long long seed_override,
                                    int record_timing, char** summary_out,
                                    int* audit_failures_out) {
  if (!config) return fail(NOMADBS_ERR_BAD_ARGUMENT, "null config");
  std::string path = output_csv ? output_csv : config->config.output;
  if (path.empty())
    return fail(NOMADBS_ERR_BAD_ARGUMENT, "no output path given and none in the config");
  return guarded([&] {
    int n_workers = workers;
    if (n_workers <= 0)
      n_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const nomadbs::CampaignResult result = nomadbs::run_campaign(
        config->config, n_workers, seed_override, record_timing != 0);
    nomadbs::write_campaign_csv(result, path);
    if (summary_out) {
      const std::string table = nomadbs::summarize_rows(
          result.rows, result.config.params.num_subcarriers);
      *summary_out = dup_string(table);
    }
    if (audit_failures_out) *audit_failures_out = result.audit_failures;
    return NOMADBS_OK;
  });
}

nomadbs_status nomadbs_summarize_file(const char* csv_path, char** table_out) {
  if (!csv_path || !table_out) return fail(NOMADBS_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    *table_out = dup_string(nomadbs::summarize_csv_file(csv_path));
    return NOMADBS_OK;
  });
}

nomadbs_status nomadbs_dump_channel(const nomadbs_config* config, int trial,
                                    const char* out_path) {
  if (!config || !out_path) return fail(NOMADBS_ERR_BAD_ARGUMENT, "null argument");
  if (trial < 0) return fail(NOMADBS_ERR_BAD_ARGUMENT, "trial must be >= 0");
  return guarded([&] {
    const nomadbs::SystemParams& params = config->config.params;
    const nomadbs::ChannelTensor tensor =
        nomadbs::realize_trial(params, static_cast<uint64_t>(trial));
    nomadbs::dump_channel_csv(tensor, params, static_cast<uint64_t>(trial), out_path);
    return NOMADBS_OK;
  });
}

nomadbs_status nomadbs_oracle_report(const char* name, int count,
                                     unsigned long long seed, char** report_out) {
  if (!name || !report_out) return fail(NOMADBS_ERR_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string which = name;
    nomadbs::OracleBatchReport report;
    if (which == "waterfill")
      report = nomadbs::oracle_waterfill_agreement(count > 0 ? count : 10000, seed);
    else if (which == "lpo-grid")
      report = nomadbs::oracle_lpo_grid(count > 0 ? count : 1000, seed);
    else if (which == "opad-grid")
      report = nomadbs::oracle_opad_grid(count > 0 ? count : 200, seed);
    else if (which == "greedy-gap")
      report = nomadbs::oracle_greedy_gap(count > 0 ? count : 1000, seed);
    else
      return fail(NOMADBS_ERR_BAD_ARGUMENT, "unknown oracle batch: " + which);
    *report_out = dup_string(nomadbs::format_report(report));
    return NOMADBS_OK;
  });
}

} // extern "C"
