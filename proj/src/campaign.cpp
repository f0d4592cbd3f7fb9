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

#include "campaign.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "channel.hpp"
#include "rng.hpp"

namespace nomadbs {

using nlohmann::json;

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::RateReq: return "rate_req";
    case SweepAxis::NumUsers: return "num_users";
    case SweepAxis::NumRrh: return "num_rrh";
  }
  return "?";
}

SystemParams CampaignConfig::params_at(int point) const {
  SystemParams p = params;
  if (axis == SweepAxis::None) return p;
  const double v = sweep_values.at(point);
  switch (axis) {
    case SweepAxis::RateReq: p.rate_req = v; break;
    case SweepAxis::NumUsers: p.num_users = static_cast<int>(v); break;
    case SweepAxis::NumRrh: p.num_rrh = static_cast<int>(v); break;
    case SweepAxis::None: break;
  }
  return validate_config(p);
}

CampaignConfig campaign_from_json_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(ConfigErrorCode::BadValue, "<json>", e.what());
  }
  if (!j.is_object())
    throw ConfigError(ConfigErrorCode::BadValue, "<json>", "expected an object");

  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key != "params" && key != "methods" && key != "sweep_axis" &&
        key != "sweep_values" && key != "trials" && key != "output")
      throw ConfigError(ConfigErrorCode::UnknownKey, key, "");
  }

  CampaignConfig config;
  config.params = j.contains("params")
                      ? params_from_json_text(j.at("params").dump())
                      : validate_config(SystemParams{});

  if (!j.contains("methods") || !j.at("methods").is_array() || j.at("methods").empty())
    throw ConfigError(ConfigErrorCode::BadValue, "methods", "need a nonempty array");
  for (const auto& m : j.at("methods")) {
    MethodId id;
    if (!m.is_string() || !method_from_name(m.get<std::string>(), &id))
      throw ConfigError(ConfigErrorCode::BadValue, "methods",
                        "unknown method " + m.dump());
    config.methods.push_back(id);
  }

  if (j.contains("sweep_axis")) {
    const std::string axis = j.at("sweep_axis").get<std::string>();
    if (axis == "none") config.axis = SweepAxis::None;
    else if (axis == "rate_req") config.axis = SweepAxis::RateReq;
    else if (axis == "num_users") config.axis = SweepAxis::NumUsers;
    else if (axis == "num_rrh") config.axis = SweepAxis::NumRrh;
    else throw ConfigError(ConfigErrorCode::BadValue, "sweep_axis", axis);
  }
  if (config.axis != SweepAxis::None) {
    if (!j.contains("sweep_values") || !j.at("sweep_values").is_array() ||
        j.at("sweep_values").empty())
      throw ConfigError(ConfigErrorCode::BadValue, "sweep_values", "need a nonempty array");
    for (const auto& v : j.at("sweep_values")) {
      const double value = v.get<double>();
      if (!(value > 0.0))
        throw ConfigError(ConfigErrorCode::BadValue, "sweep_values", "values must be > 0");
      config.sweep_values.push_back(value);
    }
  } else if (j.contains("sweep_values")) {
    throw ConfigError(ConfigErrorCode::BadValue, "sweep_values",
                      "set sweep_axis to use sweep_values");
  }

  if (j.contains("trials")) config.trials = j.at("trials").get<int>();
  if (j.contains("output")) config.output = j.at("output").get<std::string>();

  for (int point = 0; point < config.num_points(); ++point) config.params_at(point);
  return config;
}

CampaignConfig campaign_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigErrorCode::IoFailure, path, "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return campaign_from_json_text(buf.str());
}

CampaignResult run_campaign(const CampaignConfig& config, int workers,
                            int64_t seed_override, bool record_timing) {
  CampaignResult result;
  result.config = config;
  if (seed_override >= 0)
    result.config.params.seed = static_cast<uint64_t>(seed_override);

  const int points = result.config.num_points();
  const int trials = result.config.effective_trials();
  const int methods = static_cast<int>(result.config.methods.size());
  const int tasks = points * trials;
  result.rows.resize(static_cast<size_t>(tasks) * methods);

  if (workers < 1) workers = 1;
  std::atomic<int> next_task{0};
  std::atomic<int> audit_failures{0};
  std::atomic<int> allocation_errors{0};

  auto worker_fn = [&]() {
    for (;;) {
      const int task = next_task.fetch_add(1);
      if (task >= tasks) return;
      const int point = task / trials;
      const int trial = task % trials;
      const SystemParams params = result.config.params_at(point);
      const double sweep_value =
          result.config.axis == SweepAxis::None ? 0.0 : result.config.sweep_values[point];
      const ChannelTensor channel = realize_trial(params, static_cast<uint64_t>(trial));
      for (int m = 0; m < methods; ++m) {
        TrialRow& row = result.rows[static_cast<size_t>(task) * methods + m];
        row.method = method_name(result.config.methods[m]);
        row.sweep_axis = sweep_axis_name(result.config.axis);
        row.sweep_value = sweep_value;
        row.trial = trial;
        row.seed = mix_seed({params.seed, static_cast<uint64_t>(trial)});
        const auto t0 = std::chrono::steady_clock::now();
        try {
          const AllocationState state =
              run_method(result.config.methods[m], channel, params);
          const AuditReport report = audit(state, channel, params);
          row.total_power_mw = report.total_power_mw;
          row.cats = report.categories;
          row.audit_ok = report.ok();
          if (!row.audit_ok) audit_failures.fetch_add(1);
        } catch (const std::exception&) {
          row.total_power_mw = std::nan("");
          row.audit_ok = false;
          allocation_errors.fetch_add(1);
          audit_failures.fetch_add(1);
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_ms =
            record_timing
                ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                : 0.0;
      }
    }
  };

  if (workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
  }

  result.audit_failures = audit_failures.load();
  result.allocation_errors = allocation_errors.load();
  return result;
}

void write_campaign_csv(const CampaignResult& result, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  json params_json = json::parse(params_to_json_text(result.config.params));
  std::fprintf(f, "# nomadbs campaign v1\n");
  std::fprintf(f, "# params: %s\n", params_json.dump().c_str());
  std::fprintf(f, "method,sweep_axis,sweep_value,trial,seed,total_power_mW,"
                  "n_nonmux,n_mutsic,n_singsic_srrh,n_singsic_drrh,n_unalloc,"
                  "audit_ok,wall_ms\n");
  for (const auto& row : result.rows) {
    std::fprintf(f, "%s,%s,%.10g,%d,%llu,%.10g,%d,%d,%d,%d,%d,%d,%.3f\n",
                 row.method.c_str(), row.sweep_axis.c_str(), row.sweep_value, row.trial,
                 static_cast<unsigned long long>(row.seed), row.total_power_mw,
                 row.cats.non_mux, row.cats.mutual_sic, row.cats.single_sic_srrh,
                 row.cats.single_sic_drrh, row.cats.unallocated, row.audit_ok ? 1 : 0,
                 row.wall_ms);
  }
  std::fclose(f);
}

std::vector<TrialRow> read_campaign_csv(const std::string& path, int* num_subcarriers) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (num_subcarriers) *num_subcarriers = 0;
  std::vector<TrialRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# params: ";
      if (num_subcarriers && line.rfind(tag, 0) == 0) {
        const json j = json::parse(line.substr(tag.size()));
        *num_subcarriers = j.value("num_subcarriers", 0);
      }
      continue;
    }
    if (!header_seen) { header_seen = true; continue; } // column names
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 13) throw std::runtime_error("malformed campaign CSV row");
    TrialRow row;
    row.method = fields[0];
    row.sweep_axis = fields[1];
    row.sweep_value = std::strtod(fields[2].c_str(), nullptr);
    row.trial = std::atoi(fields[3].c_str());
    row.seed = std::strtoull(fields[4].c_str(), nullptr, 10);
    row.total_power_mw = std::strtod(fields[5].c_str(), nullptr);
    row.cats.non_mux = std::atoi(fields[6].c_str());
    row.cats.mutual_sic = std::atoi(fields[7].c_str());
    row.cats.single_sic_srrh = std::atoi(fields[8].c_str());
    row.cats.single_sic_drrh = std::atoi(fields[9].c_str());
    row.cats.unallocated = std::atoi(fields[10].c_str());
    row.audit_ok = fields[11] == "1";
    row.wall_ms = std::strtod(fields[12].c_str(), nullptr);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summarize_rows(const std::vector<TrialRow>& rows, int num_subcarriers) {
  struct Agg {
    int n = 0, n_ok = 0;
    double sum_p = 0.0, sum_p2 = 0.0;
    double sum_nonmux = 0.0, sum_mut = 0.0, sum_srrh = 0.0, sum_drrh = 0.0,
           sum_unalloc = 0.0;
  };
  std::map<std::pair<double, std::string>, Agg> groups;
  std::string axis = rows.empty() ? "none" : rows.front().sweep_axis;
  for (const auto& row : rows) {
    Agg& agg = groups[{row.sweep_value, row.method}];
    ++agg.n;
    if (row.audit_ok && std::isfinite(row.total_power_mw)) {
      ++agg.n_ok;
      const double watts = row.total_power_mw / 1000.0;
      agg.sum_p += watts;
      agg.sum_p2 += watts * watts;
    }
    agg.sum_nonmux += row.cats.non_mux;
    agg.sum_mut += row.cats.mutual_sic;
    agg.sum_srrh += row.cats.single_sic_srrh;
    agg.sum_drrh += row.cats.single_sic_drrh;
    agg.sum_unalloc += row.cats.unallocated;
  }

  std::ostringstream out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-26s %10s %10s %10s %8s %8s %8s %8s %8s %8s\n",
                "method", axis.c_str(), "mean_W", "std_W", "nonmux", "mutsic",
                "sic_srrh", "sic_drrh", "unalloc", "noma_frac");
  out << buf;
  int excluded = 0;
  for (const auto& [key, agg] : groups) {
    const double mean = agg.n_ok > 0 ? agg.sum_p / agg.n_ok : std::nan("");
    const double var =
        agg.n_ok > 1 ? (agg.sum_p2 - agg.sum_p * agg.sum_p / agg.n_ok) / (agg.n_ok - 1)
                     : 0.0;
    const double nonmux = agg.sum_nonmux / agg.n;
    const double noma_frac =
        num_subcarriers > 0 ? (num_subcarriers - nonmux) / num_subcarriers : 0.0;
    std::snprintf(buf, sizeof buf,
                  "%-26s %10.4g %10.4g %10.4g %8.3f %8.3f %8.3f %8.3f %8.3f %8.3f\n",
                  key.second.c_str(), key.first, mean, std::sqrt(std::max(0.0, var)),
                  nonmux, agg.sum_mut / agg.n, agg.sum_srrh / agg.n, agg.sum_drrh / agg.n,
                  agg.sum_unalloc / agg.n, noma_frac);
    out << buf;
    excluded += agg.n - agg.n_ok;
  }
  if (excluded > 0)
    out << "note: " << excluded
        << " trial(s) failed the allocation audit and are excluded from power means\n";
  return out.str();
}

std::string summarize_csv_file(const std::string& path) {
  int s = 0;
  const std::vector<TrialRow> rows = read_campaign_csv(path, &s);
  return summarize_rows(rows, s);
}

} // namespace nomadbs
