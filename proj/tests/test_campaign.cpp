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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "campaign.hpp"

using namespace nomadbs;

namespace {

const char* kSmallConfig = R"({
  "params": {"num_users": 2, "num_subcarriers": 4, "num_rrh": 2,
             "rate_req": 4e6, "trials": 3, "seed": 11},
  "methods": ["OMA_CBS", "OMA_DBS", "NOMA_DBS_SRRH"]
})";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

TEST_CASE("campaign config parsing: methods, sweeps, unknown keys") {
  const CampaignConfig config = campaign_from_json_text(kSmallConfig);
  CHECK(config.methods.size() == 3);
  CHECK(config.effective_trials() == 3);
  CHECK(config.num_points() == 1);

  const CampaignConfig swept = campaign_from_json_text(R"({
    "params": {"num_users": 2, "num_subcarriers": 4},
    "methods": ["OMA_CBS"],
    "sweep_axis": "rate_req",
    "sweep_values": [2e6, 4e6],
    "trials": 2
  })");
  CHECK(swept.num_points() == 2);
  CHECK(swept.params_at(1).rate_req == doctest::Approx(4e6));

  CHECK_THROWS_AS(campaign_from_json_text(R"({"methods": ["OMA_CBS"], "bogus": 1})"),
                  ConfigError);
  CHECK_THROWS_AS(campaign_from_json_text(R"({"methods": ["NOT_A_METHOD"]})"),
                  ConfigError);
  CHECK_THROWS_AS(campaign_from_json_text(R"({"methods": []})"), ConfigError);
}

TEST_CASE("smoke campaign: audited rows for every cell") {
  const CampaignConfig config = campaign_from_json_text(kSmallConfig);
  const CampaignResult result = run_campaign(config, 1, -1, false);
  REQUIRE(result.rows.size() == 9); // 3 trials x 3 methods
  CHECK(result.audit_failures == 0);
  for (const auto& row : result.rows) {
    CHECK(row.audit_ok);
    CHECK(row.total_power_mw > 0.0);
    CHECK(row.cats.non_mux + row.cats.mutual_sic + row.cats.single_sic_srrh +
              row.cats.single_sic_drrh + row.cats.unallocated ==
          4);
  }
}

TEST_CASE("paired design: all methods of a trial see the same channel") {
  // Single-user OMA on CBS and DBS with one antenna are the same method;
  // identical rows prove the channel is shared, not regenerated per method.
  const CampaignConfig config = campaign_from_json_text(R"({
    "params": {"num_users": 2, "num_subcarriers": 4, "num_rrh": 1,
               "rate_req": 4e6, "trials": 2, "seed": 5},
    "methods": ["OMA_CBS", "OMA_DBS"]
  })");
  const CampaignResult result = run_campaign(config, 1, -1, false);
  REQUIRE(result.rows.size() == 4);
  CHECK(result.rows[0].total_power_mw == result.rows[1].total_power_mw);
  CHECK(result.rows[2].total_power_mw == result.rows[3].total_power_mw);
}

TEST_CASE("worker count does not change the output bytes") {
  const CampaignConfig config = campaign_from_json_text(kSmallConfig);
  const CampaignResult a = run_campaign(config, 1, -1, false);
  const CampaignResult b = run_campaign(config, 4, -1, false);
  const std::string path_a = "campaign_w1.csv";
  const std::string path_b = "campaign_w4.csv";
  write_campaign_csv(a, path_a);
  write_campaign_csv(b, path_b);
  CHECK(slurp(path_a) == slurp(path_b));
  std::remove(path_a.c_str());
  std::remove(path_b.c_str());
}

TEST_CASE("csv round trip and summary") {
  const CampaignConfig config = campaign_from_json_text(kSmallConfig);
  const CampaignResult result = run_campaign(config, 2, -1, true);
  const std::string path = "campaign_rt.csv";
  write_campaign_csv(result, path);

  int s = 0;
  const std::vector<TrialRow> rows = read_campaign_csv(path, &s);
  CHECK(s == 4);
  REQUIRE(rows.size() == result.rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].method == result.rows[i].method);
    CHECK(rows[i].trial == result.rows[i].trial);
    CHECK(rows[i].total_power_mw ==
          doctest::Approx(result.rows[i].total_power_mw).epsilon(1e-9));
  }

  const std::string table = summarize_rows(rows, s);
  CHECK(table.find("OMA_CBS") != std::string::npos);
  CHECK(table.find("NOMA_DBS_SRRH") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("summary of a single trial equals that trial's values") {
  const CampaignConfig config = campaign_from_json_text(R"({
    "params": {"num_users": 2, "num_subcarriers": 4, "num_rrh": 2,
               "rate_req": 4e6, "trials": 1, "seed": 11},
    "methods": ["OMA_DBS"]
  })");
  const CampaignResult result = run_campaign(config, 1, -1, false);
  REQUIRE(result.rows.size() == 1);
  const std::string table = summarize_rows(result.rows, 4);
  char expected[64];
  std::snprintf(expected, sizeof expected, "%10.4g",
                result.rows[0].total_power_mw / 1000.0);
  CHECK(table.find(expected) != std::string::npos);
}

TEST_CASE("seed override changes results deterministically") {
  const CampaignConfig config = campaign_from_json_text(kSmallConfig);
  const CampaignResult a = run_campaign(config, 1, 777, false);
  const CampaignResult b = run_campaign(config, 1, 777, false);
  const CampaignResult c = run_campaign(config, 1, 778, false);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i)
    CHECK(a.rows[i].total_power_mw == b.rows[i].total_power_mw);
  bool any_diff = false;
  for (size_t i = 0; i < a.rows.size(); ++i)
    any_diff = any_diff || a.rows[i].total_power_mw != c.rows[i].total_power_mw;
  CHECK(any_diff);
}
