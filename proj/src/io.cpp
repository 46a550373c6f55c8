// Copyright 2026 The qwproj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwproj/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qwproj/error.hpp"

namespace qwproj::io {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidFormat, what); }

const Json& field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return json.at(key);
}

std::string string_field(const Json& json, const char* key) {
  const Json& v = field(json, key);
  if (!v.is_string()) bad(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::int64_t int_field(const Json& json, const char* key) {
  const Json& v = field(json, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

Amplitude complex_from(const Json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    bad("complex numbers are [re, im] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Json complex_to(Amplitude a) { return Json::array({a.real(), a.imag()}); }

void require_source(const ProjectionMap& pmap, const SpacePtr& source) {
  if (!compatible(*pmap.source(), *source)) {
    throw Error(ErrorCode::kSpaceMismatch,
                pmap.name() + " needs source " + pmap.source()->name() + ", got " + source->name());
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Json state_to_json(const WalkState& state) {
  Json support = Json::array();
  for (std::size_t i = 0; i < state.support_size(); ++i) {
    Json pos = Json::array();
    for (std::int64_t c : state.positions()[i].coords()) pos.push_back(c);
    Json coin = Json::array();
    for (Amplitude a : state.coin(i)) coin.push_back(complex_to(a));
    support.push_back(Json{{"pos", std::move(pos)}, {"coin", std::move(coin)}});
  }
  return Json{{"space", state.space()->name()}, {"support", std::move(support)}};
}

WalkState state_from_json(const Json& json, const SpacePtr& space) {
  if (string_field(json, "space") != space->name()) {
    bad("state is on \"" + string_field(json, "space") + "\", expected \"" + space->name() + "\"");
  }
  const Json& support = field(json, "support");
  if (!support.is_array()) bad("\"support\" must be an array");
  std::vector<std::pair<PositionKey, CoinVector>> rows;
  for (const Json& entry : support) {
    const Json& pos = field(entry, "pos");
    const Json& coin = field(entry, "coin");
    if (!pos.is_array() || pos.empty() || pos.size() > PositionKey::kMaxDim) {
      bad("\"pos\" must hold 1 or 2 integers");
    }
    std::vector<std::int64_t> coords;
    for (const Json& c : pos) {
      if (!c.is_number_integer()) bad("coordinates must be integers");
      coords.push_back(c.get<std::int64_t>());
    }
    if (!coin.is_array()) bad("\"coin\" must be an array");
    CoinVector v;
    for (const Json& a : coin) v.push_back(complex_from(a));
    rows.emplace_back(PositionKey(std::span<const std::int64_t>(coords)), std::move(v));
  }
  return WalkState::from_assignments(space, rows);
}

std::string distribution_csv(const WalkState& state) {
  static constexpr const char* kAxes[] = {"x", "y"};
  std::string out;
  for (std::size_t i = 0; i < state.space()->dimension(); ++i) {
    out += kAxes[i];
    out += ',';
  }
  out += "probability\n";
  for (const auto& [x, p] : position_distribution(state)) {
    for (std::int64_t c : x.coords()) {
      out += std::to_string(c);
      out += ',';
    }
    out += format_double(p);
    out += '\n';
  }
  return out;
}

Json commutation_report_json(const CommutationReport& report) {
  return Json{{"steps", report.steps},
              {"residuals", report.residuals},
              {"max_residual", report.max_residual},
              {"passed", report.passed}};
}

Json reconstruction_report_json(const ReconstructionSummary& summary, const WalkState& recovered) {
  Json out{{"grid_size", summary.samples},
           {"sigma_min", summary.bounds.min},
           {"sigma_max", summary.bounds.max}};
  out["max_error"] = summary.max_error ? Json(*summary.max_error) : Json(nullptr);
  out["state"] = state_to_json(recovered);
  return out;
}

SpacePtr space_from_descriptor(const Json& json) {
  const std::string name = string_field(json, "space");
  if (name == "z1") return make_lattice(1);
  if (name == "z2") return make_lattice(2);
  if (name == "llattice") return make_llattice();
  if (name == "circle") return make_circle(int_field(json, "n"));
  bad("unknown space \"" + name + "\"");
}

ProjectionMap projection_from_descriptor(const Json& json, const SpacePtr& source) {
  const std::string rho = string_field(json, "rho");
  std::optional<ProjectionMap> pmap;
  if (rho == "lattice") {
    pmap = lattice_quotient(int_field(json, "k"), int_field(json, "l"));
  } else if (rho == "mod") {
    pmap = cyclic_quotient(int_field(json, "n"));
  } else if (rho == "llattice-diag") {
    pmap = llattice_quotient();
  } else if (rho == "identity") {
    pmap = identity_projection(source);
  } else {
    bad("unknown projection \"" + rho + "\"");
  }
  require_source(*pmap, source);
  return std::move(*pmap);
}

CoinMatrix coin_from_descriptor(const Json& json) {
  const std::string kind = string_field(json, "coin");
  if (kind == "grover4") return grover_coin();
  if (kind == "hadamard2") return hadamard_coin();
  if (kind != "matrix") bad("unknown coin \"" + kind + "\"");
  const Json& rows = field(json, "rows");
  if (!rows.is_array() || rows.empty()) bad("\"rows\" must be a non-empty array");
  const std::size_t d = rows.size();
  std::vector<Amplitude> entries;
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != d) bad("coin matrix must be square");
    for (const Json& a : row) entries.push_back(complex_from(a));
  }
  return CoinMatrix(d, std::move(entries));
}

ScenarioDescriptor scenario_from_config(const Json& json) {
  SpacePtr space = space_from_descriptor(field(json, "space"));
  CoinMatrix coin = coin_from_descriptor(field(json, "coin"));
  double phi = 0.0;
  if (json.contains("phi")) {
    const Json& p = json.at("phi");
    if (p.is_number()) {
      phi = p.get<double>();
    } else if (p.is_string()) {
      phi = parse_angle(p.get<std::string>());
    } else {
      bad("\"phi\" must be a number or an angle string");
    }
  }
  std::optional<ProjectionMap> pmap;
  if (json.contains("projection")) pmap = projection_from_descriptor(json.at("projection"), space);
  ScenarioDescriptor d{"custom", WalkSpec(space, CoinAssignment::homogeneous(std::move(coin))),
                       std::move(pmap), phi, {}};
  d.states.emplace("default", default_initial_state(space));
  return d;
}

double parse_angle(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> double { bad("cannot parse angle \"" + original + "\""); };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  // Plain decimal numbers only: no inf, nan or hex.
  auto number = [](std::string_view& s, double& out) {
    std::size_t n = 0;
    while (n < s.size() && (std::isdigit(static_cast<unsigned char>(s[n])) || s[n] == '.' ||
                            s[n] == 'e' || s[n] == 'E' ||
                            ((s[n] == '+' || s[n] == '-') && n > 0 &&
                             (s[n - 1] == 'e' || s[n - 1] == 'E')))) {
      ++n;
    }
    if (n == 0) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + n, out);
    if (ec != std::errc() || ptr != s.data() + n) return false;
    s.remove_prefix(n);
    return true;
  };

  std::string_view s = trim(text);
  double sign = 1.0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    if (s.front() == '-') sign = -1.0;
    s = trim(s.substr(1));
  }
  double value = 1.0;
  const bool has_coeff = number(s, value);
  s = trim(s);
  bool has_pi = false;
  if (has_coeff && !s.empty() && s.front() == '*') s = trim(s.substr(1));
  if (s.starts_with("pi")) {
    has_pi = true;
    value *= std::numbers::pi;
    s = trim(s.substr(2));
  } else if (has_coeff && text.find('*') != std::string_view::npos) {
    return fail();
  }
  if (!has_coeff && !has_pi) return fail();
  if (!s.empty() && s.front() == '/') {
    s = trim(s.substr(1));
    double denom = 0.0;
    if (!number(s, denom) || denom == 0.0) return fail();
    value /= denom;
    s = trim(s);
  }
  if (!s.empty() || !std::isfinite(value)) return fail();
  return sign * value;
}

}  // namespace qwproj::io
