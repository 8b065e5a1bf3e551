// Copyright 2026 The flocsteady Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "floc/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "floc/error.hpp"

namespace floc {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) {
    fail(ErrorCode::invalid_argument, std::string("key '") + key +
                                          "' must be a number");
  }
  return v.get<double>();
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

ParamSet params_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::invalid_argument, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::invalid_argument, "config must be a JSON object");

  static const std::set<std::string> known = {
      "gamma_dot", "nu", "a", "b", "c_g", "c_mu_convention", "xbar"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      fail(ErrorCode::invalid_argument, "unknown config key '" + item.key() + "'");
    }
  }
  for (const char* key : {"gamma_dot", "c_g"}) {
    if (!j.contains(key)) {
      fail(ErrorCode::invalid_argument, std::string("missing config key '") + key + "'");
    }
  }

  ParamSet p;
  p.gamma_dot = number(j, "gamma_dot");
  p.c_g = number(j, "c_g");
  if (j.contains("nu")) p.nu = number(j, "nu");
  if (j.contains("a")) p.a = number(j, "a");
  if (j.contains("b")) p.b = number(j, "b");
  if (j.contains("xbar")) p.xbar = number(j, "xbar");
  if (j.contains("c_mu_convention")) {
    const auto& v = j.at("c_mu_convention");
    if (!v.is_string()) {
      fail(ErrorCode::invalid_argument, "c_mu_convention must be a string");
    }
    p.c_mu_convention = removal_convention_from_string(v.get<std::string>());
  }
  p.validate();
  return p;
}

ParamSet load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str());
}

std::string to_json(const ParamSet& p) {
  json j{{"gamma_dot", p.gamma_dot},
         {"nu", p.nu},
         {"a", p.a},
         {"b", p.b},
         {"c_g", p.c_g},
         {"c_mu_convention", std::string(to_string(p.c_mu_convention))},
         {"xbar", p.xbar}};
  return j.dump(2);
}

std::string to_json(const SteadyState& s) {
  json j;
  j["n"] = s.grid.n;
  j["xbar"] = s.grid.xbar;
  j["nodes"] = s.grid.nodes;
  j["u"] = std::vector<double>(s.u.data(), s.u.data() + s.u.size());
  j["c_q"] = s.converged ? finite_or_string(s.c_q) : json(nullptr);
  j["residual_norm"] = finite_or_string(s.residual_norm);
  j["iterations"] = s.iterations;
  j["method"] = std::string(to_string(s.method));
  j["converged"] = s.converged;
  return j.dump(2);
}

std::string to_json(const TheoremReport& r) {
  json j{
      {"c1_holds", r.c1_holds},
      {"c1_min_margin", finite_or_string(r.c1_min_margin)},
      {"inv_g_l1", finite_or_string(r.inv_g_l1)},
      {"ka_sup", finite_or_string(r.ka_sup)},
      {"kf_sup", finite_or_string(r.kf_sup)},
      {"half_kf_minus_mu_sup", finite_or_string(r.half_kf_minus_mu_sup)},
      {"radius_r", finite_or_string(r.radius_r)},
      {"contraction_c", finite_or_string(r.contraction_c)},
      {"maps_into_holds", r.maps_into_holds},
      {"theorem_applies", r.theorem_applies},
      {"n_samples", r.n_samples},
      {"ka_samples_per_axis", r.ka_samples_per_axis},
  };
  return j.dump(2);
}

}  // namespace floc
