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

#include "params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nomadbs {

const char* config_error_name(ConfigErrorCode code) {
  switch (code) {
    case ConfigErrorCode::NonPositiveUsers: return "NonPositiveUsers";
    case ConfigErrorCode::TooFewSubcarriers: return "TooFewSubcarriers";
    case ConfigErrorCode::NonPositiveRrh: return "NonPositiveRrh";
    case ConfigErrorCode::NonPositiveBandwidth: return "NonPositiveBandwidth";
    case ConfigErrorCode::NonPositiveNoise: return "NonPositiveNoise";
    case ConfigErrorCode::NegativeRate: return "NegativeRate";
    case ConfigErrorCode::InvalidFtpaAlpha: return "InvalidFtpaAlpha";
    case ConfigErrorCode::NegativeThreshold: return "NegativeThreshold";
    case ConfigErrorCode::NegativeMargin: return "NegativeMargin";
    case ConfigErrorCode::NonPositiveCellRadius: return "NonPositiveCellRadius";
    case ConfigErrorCode::NegativeRingFraction: return "NegativeRingFraction";
    case ConfigErrorCode::NonPositiveExponent: return "NonPositiveExponent";
    case ConfigErrorCode::NegativeShadowing: return "NegativeShadowing";
    case ConfigErrorCode::NegativeDelaySpread: return "NegativeDelaySpread";
    case ConfigErrorCode::NonPositiveClamp: return "NonPositiveClamp";
    case ConfigErrorCode::NonPositiveTrials: return "NonPositiveTrials";
    case ConfigErrorCode::UnknownKey: return "UnknownKey";
    case ConfigErrorCode::BadValue: return "BadValue";
    case ConfigErrorCode::IoFailure: return "IoFailure";
  }
  return "ConfigError";
}

SystemParams validate_config(const SystemParams& p) {
  if (p.num_users < 1)
    throw ConfigError(ConfigErrorCode::NonPositiveUsers, "num_users", "need K >= 1");
  if (p.num_subcarriers < p.num_users)
    throw ConfigError(ConfigErrorCode::TooFewSubcarriers, "num_subcarriers",
                      "need S >= K so every user receives a subcarrier");
  if (p.num_rrh < 1)
    throw ConfigError(ConfigErrorCode::NonPositiveRrh, "num_rrh", "need R >= 1");
  if (!(p.bandwidth > 0.0) || !std::isfinite(p.bandwidth))
    throw ConfigError(ConfigErrorCode::NonPositiveBandwidth, "bandwidth", "");
  if (!(p.noise_psd > 0.0) || !std::isfinite(p.noise_psd))
    throw ConfigError(ConfigErrorCode::NonPositiveNoise, "noise_psd", "");
  if (p.rate_req < 0.0 || !std::isfinite(p.rate_req))
    throw ConfigError(ConfigErrorCode::NegativeRate, "rate_req", "");
  if (!(p.ftpa_alpha >= 0.0 && p.ftpa_alpha <= 1.0))
    throw ConfigError(ConfigErrorCode::InvalidFtpaAlpha, "ftpa_alpha", "need alpha in [0,1]");
  if (p.power_threshold < 0.0)
    throw ConfigError(ConfigErrorCode::NegativeThreshold, "power_threshold", "");
  if (p.safety_margin < 0.0)
    throw ConfigError(ConfigErrorCode::NegativeMargin, "safety_margin", "");
  if (!(p.cell_radius > 0.0))
    throw ConfigError(ConfigErrorCode::NonPositiveCellRadius, "cell_radius", "");
  if (p.rrh_ring_fraction < 0.0)
    throw ConfigError(ConfigErrorCode::NegativeRingFraction, "rrh_ring_fraction", "");
  if (!(p.pathloss_exponent > 0.0))
    throw ConfigError(ConfigErrorCode::NonPositiveExponent, "pathloss_exponent", "");
  if (!std::isfinite(p.pathloss_ref_db))
    throw ConfigError(ConfigErrorCode::BadValue, "pathloss_ref_db", "");
  if (p.shadowing_sigma < 0.0)
    throw ConfigError(ConfigErrorCode::NegativeShadowing, "shadowing_sigma", "");
  if (p.rms_delay_spread < 0.0)
    throw ConfigError(ConfigErrorCode::NegativeDelaySpread, "rms_delay_spread", "");
  if (!(p.min_distance_clamp > 0.0))
    throw ConfigError(ConfigErrorCode::NonPositiveClamp, "min_distance_clamp", "");
  if (p.trials < 1)
    throw ConfigError(ConfigErrorCode::NonPositiveTrials, "trials", "");
  return p;
}

namespace {

using nlohmann::json;

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number())
    throw ConfigError(ConfigErrorCode::BadValue, key, "expected a number");
  return v.get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer())
    throw ConfigError(ConfigErrorCode::BadValue, key, "expected an integer");
  return v.get<int>();
}

constexpr const char* kKnownKeys[] = {
    "num_users", "num_subcarriers", "num_rrh", "bandwidth", "noise_psd",
    "rate_req", "ftpa_alpha", "power_threshold", "safety_margin",
    "cell_radius", "rrh_ring_fraction", "pathloss_exponent",
    "pathloss_ref_db", "shadowing_sigma", "rms_delay_spread",
    "min_distance_clamp", "trials", "seed"};

} // namespace

SystemParams params_from_json_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(ConfigErrorCode::BadValue, "<json>", e.what());
  }
  if (!j.is_object())
    throw ConfigError(ConfigErrorCode::BadValue, "<json>", "expected an object");

  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : kKnownKeys)
      if (it.key() == k) { known = true; break; }
    if (!known)
      throw ConfigError(ConfigErrorCode::UnknownKey, it.key(), "");
  }

  SystemParams p;
  p.num_users = get_int(j, "num_users", p.num_users);
  p.num_subcarriers = get_int(j, "num_subcarriers", p.num_subcarriers);
  p.num_rrh = get_int(j, "num_rrh", p.num_rrh);
  p.bandwidth = get_num(j, "bandwidth", p.bandwidth);
  p.noise_psd = get_num(j, "noise_psd", p.noise_psd);
  p.rate_req = get_num(j, "rate_req", p.rate_req);
  p.ftpa_alpha = get_num(j, "ftpa_alpha", p.ftpa_alpha);
  p.power_threshold = get_num(j, "power_threshold", p.power_threshold);
  p.safety_margin = get_num(j, "safety_margin", p.safety_margin);
  p.cell_radius = get_num(j, "cell_radius", p.cell_radius);
  p.rrh_ring_fraction = get_num(j, "rrh_ring_fraction", p.rrh_ring_fraction);
  p.pathloss_exponent = get_num(j, "pathloss_exponent", p.pathloss_exponent);
  p.pathloss_ref_db = get_num(j, "pathloss_ref_db", p.pathloss_ref_db);
  p.shadowing_sigma = get_num(j, "shadowing_sigma", p.shadowing_sigma);
  p.rms_delay_spread = get_num(j, "rms_delay_spread", p.rms_delay_spread);
  p.min_distance_clamp = get_num(j, "min_distance_clamp", p.min_distance_clamp);
  p.trials = get_int(j, "trials", p.trials);
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_integer())
      throw ConfigError(ConfigErrorCode::BadValue, "seed", "expected an integer");
    p.seed = v.get<uint64_t>();
  }
  return validate_config(p);
}

SystemParams params_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(ConfigErrorCode::IoFailure, path, "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json_text(buf.str());
}

std::string params_to_json_text(const SystemParams& p) {
  json j;
  j["num_users"] = p.num_users;
  j["num_subcarriers"] = p.num_subcarriers;
  j["num_rrh"] = p.num_rrh;
  j["bandwidth"] = p.bandwidth;
  j["noise_psd"] = p.noise_psd;
  j["rate_req"] = p.rate_req;
  j["ftpa_alpha"] = p.ftpa_alpha;
  j["power_threshold"] = p.power_threshold;
  j["safety_margin"] = p.safety_margin;
  j["cell_radius"] = p.cell_radius;
  j["rrh_ring_fraction"] = p.rrh_ring_fraction;
  j["pathloss_exponent"] = p.pathloss_exponent;
  j["pathloss_ref_db"] = p.pathloss_ref_db;
  j["shadowing_sigma"] = p.shadowing_sigma;
  j["rms_delay_spread"] = p.rms_delay_spread;
  j["min_distance_clamp"] = p.min_distance_clamp;
  j["trials"] = p.trials;
  j["seed"] = p.seed;
  return j.dump(2);
}

} // namespace nomadbs
