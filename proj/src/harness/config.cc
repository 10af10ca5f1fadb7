// Copyright 2026 The nvgate Authors
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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nvgate/errors.h"
#include "nvgate/harness.h"

namespace nvgate {

using nlohmann::json;

namespace {

constexpr double kKhz = kTwoPi * 1e3;
constexpr double kAngstrom = 1e-10;
constexpr double kDeg = kPi / 180.0;

const std::set<std::string> kElectronLabels = {"x+", "x-", "y+", "y-",
                                               "z+", "z-", "1",  "0"};

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw SpecError(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw SpecError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SpecError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void maybe(const json& obj, const std::string& key, const std::string& where,
           T* out) {
  if (obj.contains(key)) *out = get<T>(obj, key, where);
}

Vec3 vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) throw SpecError(where + " needs 3 numbers");
  try {
    return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  } catch (const json::exception&) {
    throw SpecError(where + " needs 3 numbers");
  }
}

json vec3_json(const Vec3& v, double unit) {
  return json::array({v.x() / unit, v.y() / unit, v.z() / unit});
}

std::vector<double> grid(const json& v, const std::string& where) {
  if (v.is_string()) return parse_grid(v.get<std::string>());
  try {
    return v.get<std::vector<double>>();
  } catch (const json::exception&) {
    throw SpecError(where + " must be a list of numbers or \"start:stop:points\"");
  }
}

std::vector<BlochState> bloch_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw SpecError(where + " must be a list");
  std::vector<BlochState> out;
  for (const auto& s : v) {
    check_keys(s, where, {"theta_deg", "phi_deg"});
    BlochState b;
    b.theta = get<double>(s, "theta_deg", where) * kDeg;
    b.phi = s.contains("phi_deg") ? get<double>(s, "phi_deg", where) * kDeg : 0.0;
    out.push_back(b);
  }
  return out;
}

json bloch_json(const std::vector<BlochState>& v) {
  json out = json::array();
  for (const auto& b : v) out.push_back({{"theta_deg", b.theta / kDeg}, {"phi_deg", b.phi / kDeg}});
  return out;
}

std::string convention_name(CouplingConvention c) {
  return c == CouplingConvention::kVerbatim ? "verbatim" : "with_four_pi";
}

void parse_register(const json& r, ScenarioConfig* cfg) {
  const std::string w = "register";
  check_keys(r, w,
             {"bz_tesla", "gamma_e_rad_per_s_per_tesla",
              "gamma_n_rad_per_s_per_tesla", "detuning_apar_khz", "t_pi_ns",
              "include_internuclear", "coupling_convention", "nuclei",
              "couplings_hz"});
  RegisterConfig& reg = cfg->reg;
  maybe(r, "bz_tesla", w, &reg.bz);
  maybe(r, "gamma_e_rad_per_s_per_tesla", w, &reg.gamma_e);
  maybe(r, "gamma_n_rad_per_s_per_tesla", w, &reg.gamma_n);
  if (r.contains("detuning_apar_khz")) {
    reg.detuning_apar = get<double>(r, "detuning_apar_khz", w) * kKhz;
  }
  if (r.contains("t_pi_ns")) {
    const double t_pi = get<double>(r, "t_pi_ns", w) * 1e-9;
    if (!(t_pi > 0.0)) throw SpecError("register.t_pi_ns must be positive");
    reg.rabi = 1.0 / (4.0 * t_pi);
  }
  maybe(r, "include_internuclear", w, &reg.include_internuclear);
  if (r.contains("coupling_convention")) {
    const auto c = get<std::string>(r, "coupling_convention", w);
    if (c == "verbatim") {
      cfg->coupling_convention = CouplingConvention::kVerbatim;
    } else if (c == "with_four_pi") {
      cfg->coupling_convention = CouplingConvention::kWithFourPi;
    } else {
      throw SpecError("register.coupling_convention must be verbatim or with_four_pi");
    }
  }

  if (r.contains("nuclei")) {
    const json& list = r.at("nuclei");
    if (!list.is_array()) throw SpecError("register.nuclei must be a list");
    reg.nuclei.clear();
    reg.couplings.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string wn = w + ".nuclei[" + std::to_string(i) + "]";
      const json& n = list[i];
      check_keys(n, wn, {"label", "hyperfine_khz", "position_angstrom",
                         "hyperfine_override"});
      NuclearSpinDesc d;
      d.label = n.contains("label") ? get<std::string>(n, "label", wn)
                                    : "C" + std::to_string(i + 1);
      maybe(n, "hyperfine_override", wn, &d.hyperfine_override);
      if (n.contains("position_angstrom")) {
        d.position = vec3(n.at("position_angstrom"), wn + ".position_angstrom") * kAngstrom;
      }
      if (n.contains("hyperfine_khz")) {
        d.hyperfine = vec3(n.at("hyperfine_khz"), wn + ".hyperfine_khz") * kKhz;
      } else if (d.position) {
        d.hyperfine = hyperfine_from_position(*d.position, reg.gamma_e, reg.gamma_n);
      } else {
        throw SpecError(wn + " needs hyperfine_khz or position_angstrom");
      }
      reg.nuclei.push_back(d);
    }
    // Pairs with both positions get the dipolar constant unless listed.
    for (int i = 0; i < reg.num_nuclei(); ++i) {
      for (int j = i + 1; j < reg.num_nuclei(); ++j) {
        const auto& a = reg.nuclei[i].position;
        const auto& b = reg.nuclei[j].position;
        if (a && b) {
          reg.set_coupling(i, j, internuclear_coupling(*a, *b, reg.gamma_n,
                                                       cfg->coupling_convention));
        }
      }
    }
  }
  if (r.contains("couplings_hz")) {
    const json& list = r.at("couplings_hz");
    if (!list.is_array()) throw SpecError("register.couplings_hz must be a list");
    for (const auto& c : list) {
      check_keys(c, w + ".couplings_hz", {"pair", "g_hz"});
      const auto pair = get<std::vector<int>>(c, "pair", w + ".couplings_hz");
      if (pair.size() != 2 || pair[0] == pair[1] || pair[0] < 0 || pair[1] < 0 ||
          pair[0] >= reg.num_nuclei() || pair[1] >= reg.num_nuclei()) {
        throw SpecError("register.couplings_hz pair out of range");
      }
      reg.set_coupling(pair[0], pair[1],
                       kTwoPi * get<double>(c, "g_hz", w + ".couplings_hz"));
    }
  }
}

void parse_recipe(const json& r, ScenarioConfig* cfg) {
  const std::string w = "recipe";
  check_keys(r, w, {"gates", "central_axis"});
  if (r.contains("gates")) {
    cfg->recipe.gates.clear();
    for (const auto& g : r.at("gates")) {
      check_keys(g, w + ".gates", {"target", "axis", "phase_rad"});
      GateSpec s;
      s.target = get<int>(g, "target", w + ".gates");
      if (g.contains("axis")) s.axis = parse_axis(get<std::string>(g, "axis", w + ".gates"));
      maybe(g, "phase_rad", w + ".gates", &s.phase);
      cfg->recipe.gates.push_back(s);
    }
  }
  if (r.contains("central_axis")) {
    cfg->recipe.central_axis = parse_axis(get<std::string>(r, "central_axis", w));
  }
}

void parse_synthesis(const json& s, ScenarioConfig* cfg) {
  const std::string w = "synthesis";
  check_keys(s, w, {"harmonics", "operating_fourier", "max_blocks",
                    "phase_tolerance_rad", "axis_iterations", "gap_margin",
                    "section_order", "track_frames", "calibrate_frame_shifts"});
  maybe(s, "harmonics", w, &cfg->harmonics);
  maybe(s, "operating_fourier", w, &cfg->tuner.operating_fourier);
  maybe(s, "max_blocks", w, &cfg->max_blocks);
  maybe(s, "phase_tolerance_rad", w, &cfg->tuner.tolerance);
  maybe(s, "axis_iterations", w, &cfg->tuner.axis_iterations);
  maybe(s, "gap_margin", w, &cfg->tuner.gap_margin);
  maybe(s, "track_frames", w, &cfg->track_frames);
  maybe(s, "calibrate_frame_shifts", w, &cfg->tuner.calibrate_frame_shifts);
  if (s.contains("section_order")) {
    const auto o = get<std::string>(s, "section_order", w);
    if (o == "palindrome") {
      cfg->section_order = SectionOrder::kPalindrome;
    } else if (o == "repeat") {
      cfg->section_order = SectionOrder::kRepeat;
    } else {
      throw SpecError("synthesis.section_order must be palindrome or repeat");
    }
  }
}

void parse_error_model(const json& e, ScenarioConfig* cfg) {
  const std::string w = "error_model";
  check_keys(e, w, {"rabi_error", "detuning", "phase_jitter_deg",
                    "jitter_distribution", "jitter_scope"});
  maybe(e, "rabi_error", w, &cfg->error.rabi_error);
  maybe(e, "detuning", w, &cfg->error.detuning_on);
  if (e.contains("phase_jitter_deg")) {
    cfg->error.phase_jitter = get<double>(e, "phase_jitter_deg", w) * kDeg;
  }
  if (e.contains("jitter_distribution")) {
    const auto d = get<std::string>(e, "jitter_distribution", w);
    if (d == "uniform") {
      cfg->error.distribution = JitterDistribution::kUniform;
    } else if (d == "binary") {
      cfg->error.distribution = JitterDistribution::kBinary;
    } else {
      throw SpecError("error_model.jitter_distribution must be uniform or binary");
    }
  }
  if (e.contains("jitter_scope")) {
    const auto d = get<std::string>(e, "jitter_scope", w);
    if (d == "per_pulse") {
      cfg->error.scope = JitterScope::kPerPulse;
    } else if (d == "per_setting") {
      cfg->error.scope = JitterScope::kPerSetting;
    } else {
      throw SpecError("error_model.jitter_scope must be per_pulse or per_setting");
    }
  }
}

json to_json(const ScenarioConfig& cfg) {
  json reg;
  const RegisterConfig& r = cfg.reg;
  reg["bz_tesla"] = r.bz;
  reg["gamma_e_rad_per_s_per_tesla"] = r.gamma_e;
  reg["gamma_n_rad_per_s_per_tesla"] = r.gamma_n;
  reg["detuning_apar_khz"] = r.detuning_apar / kKhz;
  reg["t_pi_ns"] = r.t_pi() * 1e9;
  reg["include_internuclear"] = r.include_internuclear;
  reg["coupling_convention"] = convention_name(cfg.coupling_convention);
  reg["nuclei"] = json::array();
  for (const auto& n : r.nuclei) {
    json j{{"label", n.label},
           {"hyperfine_khz", vec3_json(n.hyperfine, kKhz)},
           {"hyperfine_override", n.hyperfine_override}};
    if (n.position) j["position_angstrom"] = vec3_json(*n.position, kAngstrom);
    reg["nuclei"].push_back(j);
  }
  reg["couplings_hz"] = json::array();
  for (const auto& [key, g] : r.couplings) {
    reg["couplings_hz"].push_back(
        {{"pair", {key.first, key.second}}, {"g_hz", g / kTwoPi}});
  }

  json gates = json::array();
  for (const auto& g : cfg.recipe.gates) {
    gates.push_back({{"target", g.target},
                     {"axis", std::string(1, axis_char(g.axis))},
                     {"phase_rad", g.phase}});
  }
  std::vector<std::string> axes;
  for (Axis a : cfg.correlator_axes) axes.emplace_back(1, axis_char(a));

  json out;
  out["register"] = reg;
  out["recipe"] = {{"gates", gates},
                   {"central_axis", std::string(1, axis_char(cfg.recipe.central_axis))}};
  out["synthesis"] = {
      {"harmonics", cfg.harmonics},
      {"operating_fourier", cfg.tuner.operating_fourier},
      {"max_blocks", cfg.max_blocks},
      {"phase_tolerance_rad", cfg.tuner.tolerance},
      {"axis_iterations", cfg.tuner.axis_iterations},
      {"gap_margin", cfg.tuner.gap_margin},
      {"section_order",
       cfg.section_order == SectionOrder::kPalindrome ? "palindrome" : "repeat"},
      {"track_frames", cfg.track_frames},
      {"calibrate_frame_shifts", cfg.tuner.calibrate_frame_shifts}};
  out["error_model"] = {
      {"rabi_error", cfg.error.rabi_error},
      {"detuning", cfg.error.detuning_on},
      {"phase_jitter_deg", cfg.error.phase_jitter / kDeg},
      {"jitter_distribution",
       cfg.error.distribution == JitterDistribution::kUniform ? "uniform" : "binary"},
      {"jitter_scope",
       cfg.error.scope == JitterScope::kPerPulse ? "per_pulse" : "per_setting"}};
  out["initial_state"] = {{"electron", cfg.initial_electron},
                          {"nuclei", bloch_json(cfg.initial_nuclei)}};
  out["ghz"] = {{"phase_rad", cfg.ghz_phase}};
  out["figure1"] = {{"phi_over_pi", cfg.figure1_phi_over_pi}};
  out["phase_sweep"] = {{"theta_deg", cfg.sweep_theta_deg}, {"runs", cfg.runs}};
  out["correlator"] = {{"targets", cfg.correlator_targets},
                       {"axes", axes},
                       {"nuclei", bloch_json(cfg.correlator_nuclei)}};
  out["acceptance"] = {{"ghz_fidelity_min", cfg.ghz_fidelity_min},
                       {"ghz_fidelity_max", cfg.ghz_fidelity_max},
                       {"figure1_max_deviation", cfg.figure1_max_deviation},
                       {"correlator_tolerance", cfg.correlator_tolerance},
                       {"verify_instances", cfg.verify_instances}};
  return out;
}

}  // namespace

void ScenarioConfig::validate() const {
  reg.validate();
  recipe.validate();
  const int n = reg.num_nuclei();
  for (const auto& g : recipe.gates) {
    if (g.target < 0 || g.target >= n) throw SpecError("recipe target outside register");
  }
  if (static_cast<int>(harmonics.size()) != n) {
    throw SpecError("synthesis.harmonics needs one entry per nucleus");
  }
  for (int k : harmonics) {
    if (k < 1 || k % 2 == 0) throw SpecError("harmonics must be positive and odd");
  }
  if (max_blocks < 1) throw SpecError("synthesis.max_blocks must be >= 1");
  if (!kElectronLabels.count(initial_electron)) {
    throw SpecError("initial_state.electron must be one of x+ x- y+ y- z+ z- 1 0");
  }
  if (static_cast<int>(initial_nuclei.size()) != n) {
    throw SpecError("initial_state.nuclei needs one entry per nucleus");
  }
  if (!(std::abs(error.rabi_error) < 1.0)) throw SpecError("|rabi_error| must be < 1");
  if (!(error.phase_jitter >= 0.0)) throw SpecError("phase jitter must be >= 0");
  if (figure1_phi_over_pi.empty()) throw SpecError("figure1 grid is empty");
  if (sweep_theta_deg.empty()) throw SpecError("phase_sweep grid is empty");
  for (double t : sweep_theta_deg) {
    if (!(t >= 0.0)) throw SpecError("phase_sweep grid must be non-negative");
  }
  if (runs < 1) throw SpecError("phase_sweep.runs must be >= 1");
  if (correlator_targets.empty() ||
      correlator_targets.size() != correlator_axes.size()) {
    throw SpecError("correlator needs matching targets and axes");
  }
  std::set<int> seen;
  for (int t : correlator_targets) {
    if (t < 0 || t >= n || !seen.insert(t).second) {
      throw SpecError("correlator targets must be distinct nuclei of the register");
    }
  }
  if (static_cast<int>(correlator_nuclei.size()) != n) {
    throw SpecError("correlator.nuclei needs one entry per nucleus");
  }
  if (!(ghz_fidelity_min <= ghz_fidelity_max)) {
    throw SpecError("acceptance GHZ band is empty");
  }
  if (verify_instances < 1) throw SpecError("verify_instances must be >= 1");
}

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  cfg.reg = reference_register();
  cfg.reg.rabi_error = 0.0;
  for (int j = 0; j < 3; ++j) cfg.recipe.gates.push_back({j, Axis::kX, kPi / 2});
  cfg.recipe.central_axis = Axis::kX;
  cfg.harmonics = {11, 17, 17};
  cfg.initial_nuclei.assign(3, BlochState{});
  cfg.error.rabi_error = 0.01;
  cfg.error.detuning_on = true;
  cfg.figure1_phi_over_pi = parse_grid("0:2:41");
  cfg.sweep_theta_deg = parse_grid("0:25:11");
  cfg.correlator_targets = {0, 1};
  cfg.correlator_axes = {Axis::kX, Axis::kX};
  cfg.correlator_nuclei = {{60 * kDeg, 20 * kDeg},
                           {120 * kDeg, -30 * kDeg},
                           {kPi, 0.0}};
  return cfg;
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc, "config",
             {"register", "recipe", "synthesis", "error_model", "initial_state",
              "ghz", "figure1", "phase_sweep", "correlator", "acceptance",
              "seed"});
  ScenarioConfig cfg = default_scenario();
  if (doc.contains("register")) parse_register(doc["register"], &cfg);
  const int n = cfg.reg.num_nuclei();
  // Defaults sized for the reference register follow a resized one.
  if (n != 3) {
    cfg.harmonics.clear();
    cfg.initial_nuclei.assign(n, BlochState{});
    cfg.correlator_nuclei.assign(n, BlochState{});
    cfg.recipe.gates.clear();
    for (int j = 0; j < n; ++j) cfg.recipe.gates.push_back({j, Axis::kX, kPi / 2});
  }
  if (doc.contains("recipe")) parse_recipe(doc["recipe"], &cfg);
  if (doc.contains("synthesis")) parse_synthesis(doc["synthesis"], &cfg);
  if (doc.contains("error_model")) parse_error_model(doc["error_model"], &cfg);
  if (doc.contains("initial_state")) {
    const json& s = doc["initial_state"];
    check_keys(s, "initial_state", {"electron", "nuclei"});
    maybe(s, "electron", "initial_state", &cfg.initial_electron);
    if (s.contains("nuclei")) {
      if (s["nuclei"].is_string()) {
        if (s["nuclei"] != "down") {
          throw SpecError("initial_state.nuclei must be \"down\" or a list");
        }
        cfg.initial_nuclei.assign(n, BlochState{});
      } else {
        cfg.initial_nuclei = bloch_list(s["nuclei"], "initial_state.nuclei");
      }
    }
  }
  if (doc.contains("ghz")) {
    check_keys(doc["ghz"], "ghz", {"phase_rad"});
    maybe(doc["ghz"], "phase_rad", "ghz", &cfg.ghz_phase);
  }
  if (doc.contains("figure1")) {
    check_keys(doc["figure1"], "figure1", {"phi_over_pi"});
    if (doc["figure1"].contains("phi_over_pi")) {
      cfg.figure1_phi_over_pi = grid(doc["figure1"]["phi_over_pi"], "figure1.phi_over_pi");
    }
  }
  if (doc.contains("phase_sweep")) {
    const json& s = doc["phase_sweep"];
    check_keys(s, "phase_sweep", {"theta_deg", "runs"});
    if (s.contains("theta_deg")) cfg.sweep_theta_deg = grid(s["theta_deg"], "phase_sweep.theta_deg");
    maybe(s, "runs", "phase_sweep", &cfg.runs);
  }
  if (doc.contains("correlator")) {
    const json& c = doc["correlator"];
    check_keys(c, "correlator", {"targets", "axes", "nuclei"});
    maybe(c, "targets", "correlator", &cfg.correlator_targets);
    if (c.contains("axes")) {
      cfg.correlator_axes.clear();
      for (const auto& a : get<std::vector<std::string>>(c, "axes", "correlator")) {
        cfg.correlator_axes.push_back(parse_axis(a));
      }
    }
    if (c.contains("nuclei")) cfg.correlator_nuclei = bloch_list(c["nuclei"], "correlator.nuclei");
  }
  if (doc.contains("acceptance")) {
    const json& a = doc["acceptance"];
    const std::string w = "acceptance";
    check_keys(a, w, {"ghz_fidelity_min", "ghz_fidelity_max",
                      "figure1_max_deviation", "correlator_tolerance",
                      "verify_instances"});
    maybe(a, "ghz_fidelity_min", w, &cfg.ghz_fidelity_min);
    maybe(a, "ghz_fidelity_max", w, &cfg.ghz_fidelity_max);
    maybe(a, "figure1_max_deviation", w, &cfg.figure1_max_deviation);
    maybe(a, "correlator_tolerance", w, &cfg.correlator_tolerance);
    maybe(a, "verify_instances", w, &cfg.verify_instances);
  }
  maybe(doc, "seed", "config", &cfg.seed);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string canonical_json(const ScenarioConfig& cfg) { return to_json(cfg).dump(); }

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw SpecError("bad grid value '" + s + "'");
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size() || !std::isfinite(v)) throw SpecError("bad grid value '" + s + "'");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw SpecError("grid range must be start:stop:points");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double pts = number(parts[2]);
    if (pts < 1 || pts != std::floor(pts)) throw SpecError("grid points must be a positive integer");
    const int m = static_cast<int>(pts);
    if (m == 1) return {a};
    for (int i = 0; i < m; ++i) out.push_back(a + (b - a) * i / (m - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ',')) out.push_back(number(p));
  if (out.empty()) throw SpecError("grid is empty");
  return out;
}

}  // namespace nvgate
