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
#include <sstream>
#include <string>

#include "nvgate/errors.h"
#include "nvgate/pulse_engine.h"

namespace nvgate {

namespace {

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  return r <= -kPi ? r + kTwoPi : r;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<PulseEvent> section_events(const GatePlan& plan, double t_start,
                                       double frame_phase, double t_pi) {
  if (plan.blocks <= 0 || !(plan.tau > 0.0) || !(plan.omega > 0.0)) {
    throw ScheduleError("gate plan is not tuned");
  }
  const double period = 2.0 * plan.tau;
  const double t_end = t_start + plan.duration();
  const double anchor = lattice_anchor(frame_phase, plan.omega, t_start);
  const auto unit = unit_positions(plan.x1, plan.x2);

  struct Center {
    double t;
    long composite;
    int slot;
  };
  std::vector<Center> centers;
  centers.reserve(plan.pulse_count());
  const long m0 = static_cast<long>(std::floor((t_start - anchor) / period)) - 1;
  for (long m = m0; m < m0 + 4L * plan.blocks + 3; ++m) {
    for (int i = 0; i < 10; ++i) {
      const double tc = anchor + period * (m + unit[i]);
      if (tc > t_start && tc < t_end) centers.push_back({tc, 2 * m + i / 5, i % 5});
    }
  }
  if (static_cast<int>(centers.size()) != plan.pulse_count()) {
    throw ScheduleError("section window holds " + std::to_string(centers.size()) +
                        " pulses, expected " + std::to_string(plan.pulse_count()));
  }

  std::vector<PulseEvent> out;
  out.reserve(centers.size());
  const long c0 = centers.front().composite;
  for (const auto& c : centers) {
    const long ci = ((c.composite - c0) % 8 + 8) % 8;
    const double base = kAxy8Pattern[ci] == 'X' ? 0.0 : kPi / 2;
    out.push_back({c.t - 0.5 * t_pi, t_pi, kKnillPhases[c.slot] + base, 1.0});
  }
  if (out.front().t_start < t_start || out.back().t_start + t_pi > t_end) {
    throw ScheduleError("section pulses extend past the section window");
  }
  return out;
}

PulseEvent rotation_event(double angle, double axis_phase, double t_start,
                          double t_pi) {
  double chi = wrap_angle(angle);
  if (std::abs(chi) < 1e-12) chi = kTwoPi;
  if (chi < 0.0) {
    chi = -chi;
    axis_phase += kPi;
  }
  return {t_start, chi / kPi * t_pi, wrap_angle(kPi - axis_phase), 1.0};
}

SequencePlan gate_schedule(const GatePlan& plan, const RegisterConfig& cfg) {
  SequencePlan out;
  out.events = section_events(plan, 0.0, plan.frame_phase, cfg.t_pi());
  out.duration = plan.duration();
  out.frame_shifts = plan.frame_shifts;
  out.frame_shifts.resize(cfg.num_nuclei(), 0.0);
  out.sections.push_back({plan.target, 0});
  return out;
}

SequencePlan recipe_schedule(const RecipeSpec& recipe,
                             const std::vector<GatePlan>& plans,
                             const RegisterConfig& cfg, SectionOrder order,
                             bool track_frames) {
  recipe.validate();
  const int nuclei = cfg.num_nuclei();
  const double t_pi = cfg.t_pi();

  std::vector<const GatePlan*> chosen;
  for (const auto& g : recipe.gates) {
    if (g.target >= nuclei) throw SpecError("recipe target outside register");
    const GatePlan* match = nullptr;
    for (const auto& p : plans) {
      if (p.target == g.target && p.axis == g.axis &&
          std::abs(p.target_phase - g.phase) < 1e-9) {
        match = &p;
        break;
      }
    }
    if (!match) {
      throw SpecError("no tuned plan for gate on nucleus " +
                      std::to_string(g.target));
    }
    chosen.push_back(match);
  }

  SequencePlan out;
  std::vector<double> shift(nuclei, 0.0);
  double t = 0.0;
  const double axis = recipe.central_axis == Axis::kY ? kPi / 2 : 0.0;

  auto add_sections = [&](bool reversed) {
    const int n = static_cast<int>(chosen.size());
    for (int s = 0; s < n; ++s) {
      const GatePlan& p = *chosen[reversed ? n - 1 - s : s];
      const double psi = p.frame_phase + (track_frames ? shift[p.target] : 0.0);
      auto ev = section_events(p, t, psi, t_pi);
      out.sections.push_back({p.target, static_cast<int>(out.events.size())});
      out.events.insert(out.events.end(), ev.begin(), ev.end());
      t += p.duration();
      for (int m = 0; m < nuclei && m < static_cast<int>(p.frame_shifts.size()); ++m) {
        shift[m] += p.frame_shifts[m];
      }
    }
  };

  PulseEvent first = rotation_event(kPi, axis, 0.0, t_pi);
  out.events.push_back(first);
  t = first.duration;
  add_sections(false);
  PulseEvent central = rotation_event(2 * recipe.central_phase + kPi, axis, t, t_pi);
  out.events.push_back(central);
  t += central.duration;
  add_sections(order == SectionOrder::kPalindrome);

  out.duration = t;
  out.frame_shifts = track_frames ? shift : std::vector<double>(nuclei, 0.0);
  return out;
}

std::string serialize_schedule(const SequencePlan& plan,
                               const std::string& config_hash) {
  std::ostringstream os;
  os << "# nvgate schedule v1\n";
  os << "# config_hash " << config_hash << "\n";
  os << "# pulses " << plan.events.size() << "\n";
  os << "# duration_ns " << format_double(plan.duration * 1e9) << "\n";
  os << "# frame_shifts_rad";
  for (double s : plan.frame_shifts) os << ' ' << format_double(s);
  os << "\n# t_start_ns duration_ns phase_rad amplitude_scale\n";
  for (const auto& e : plan.events) {
    os << format_double(e.t_start * 1e9) << ' ' << format_double(e.duration * 1e9)
       << ' ' << format_double(e.axis_phase) << ' '
       << format_double(e.amplitude_scale) << '\n';
  }
  return os.str();
}

SequencePlan parse_schedule(const std::string& text) {
  SequencePlan plan;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "duration_ns") {
        double ns;
        ls >> ns;
        plan.duration = ns * 1e-9;
      } else if (key == "frame_shifts_rad") {
        double s;
        while (ls >> s) plan.frame_shifts.push_back(s);
      }
      continue;
    }
    PulseEvent e;
    double start_ns, dur_ns;
    if (!(ls >> start_ns >> dur_ns >> e.axis_phase >> e.amplitude_scale)) {
      throw ScheduleError("malformed schedule line " + std::to_string(line_no));
    }
    e.t_start = start_ns * 1e-9;
    e.duration = dur_ns * 1e-9;
    plan.events.push_back(e);
  }
  return plan;
}

}  // namespace nvgate
