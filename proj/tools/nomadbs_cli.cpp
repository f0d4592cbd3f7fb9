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

// Command-line front end. Uses only the public C interface of the library.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "nomadbs.h"

namespace {

int report_error(const char* context) {
  std::fprintf(stderr, "error: %s: %s\n", context, nomadbs_last_error());
  return 2;
}

struct ConfigHandle {
  nomadbs_config* ptr = nullptr;
  ~ConfigHandle() { nomadbs_config_free(ptr); }
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo campaigns for downlink NOMA power minimization "
               "over distributed base-station antennas"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_output;
  int run_workers = 0;
  long long run_seed = -1;
  bool tolerate_failures = false;
  bool no_timing = false;
  CLI::App* run = app.add_subcommand("run", "run a campaign and write the CSV");
  run->add_option("--config", run_config, "campaign config (JSON)")->required();
  run->add_option("--out", run_output, "output CSV path (overrides config)");
  run->add_option("--workers", run_workers, "worker threads (default: all cores)");
  run->add_option("--seed", run_seed, "override the config seed");
  run->add_flag("--tolerate-audit-failures", tolerate_failures,
                "exit 0 even when some trials fail the allocation audit");
  run->add_flag("--no-timing", no_timing,
                "write wall_ms as 0 so repeated runs are byte-identical");

  // summarize
  std::string sum_input;
  CLI::App* summarize = app.add_subcommand("summarize", "aggregate a campaign CSV");
  summarize->add_option("--in", sum_input, "campaign CSV")->required();

  // dump-channel
  std::string dump_config, dump_output;
  int dump_trial = 0;
  CLI::App* dump = app.add_subcommand("dump-channel", "export one trial's channel tensor");
  dump->add_option("--config", dump_config, "campaign config (JSON)")->required();
  dump->add_option("--trial", dump_trial, "trial index")->required();
  dump->add_option("--out", dump_output, "output CSV path")->required();

  // oracle (maintenance entry point, hidden from help)
  std::string oracle_name;
  int oracle_count = 0;
  unsigned long long oracle_seed = 12345;
  CLI::App* oracle = app.add_subcommand("oracle", "re-run an oracle comparison batch");
  oracle->group(""); // hidden
  oracle->add_option("--name", oracle_name,
                     "waterfill | lpo-grid | opad-grid | greedy-gap")->required();
  oracle->add_option("--count", oracle_count, "instance count (0: default)");
  oracle->add_option("--seed", oracle_seed, "batch seed");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    ConfigHandle config;
    if (nomadbs_config_load(run_config.c_str(), &config.ptr) != NOMADBS_OK)
      return report_error("loading config");
    char* summary = nullptr;
    int audit_failures = 0;
    const nomadbs_status status = nomadbs_campaign_run(
        config.ptr, run_output.empty() ? nullptr : run_output.c_str(), run_workers,
        run_seed, no_timing ? 0 : 1, &summary, &audit_failures);
    if (status != NOMADBS_OK) return report_error("running campaign");
    std::printf("%s", summary);
    nomadbs_string_free(summary);
    if (audit_failures > 0) {
      std::fprintf(stderr, "%d trial(s) failed the allocation audit\n", audit_failures);
      if (!tolerate_failures) return 1;
    }
    return 0;
  }

  if (summarize->parsed()) {
    char* table = nullptr;
    if (nomadbs_summarize_file(sum_input.c_str(), &table) != NOMADBS_OK)
      return report_error("summarizing");
    std::printf("%s", table);
    nomadbs_string_free(table);
    return 0;
  }

  if (dump->parsed()) {
    ConfigHandle config;
    if (nomadbs_config_load(dump_config.c_str(), &config.ptr) != NOMADBS_OK)
      return report_error("loading config");
    if (nomadbs_dump_channel(config.ptr, dump_trial, dump_output.c_str()) != NOMADBS_OK)
      return report_error("dumping channel");
    return 0;
  }

  if (oracle->parsed()) {
    char* report = nullptr;
    if (nomadbs_oracle_report(oracle_name.c_str(), oracle_count, oracle_seed, &report) !=
        NOMADBS_OK)
      return report_error("oracle batch");
    std::printf("%s\n", report);
    const bool pass = std::string(report).find("PASS") != std::string::npos;
    nomadbs_string_free(report);
    return pass ? 0 : 1;
  }

  return 0;
}
