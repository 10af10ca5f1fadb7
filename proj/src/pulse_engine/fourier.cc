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

#include <algorithm>
#include <cmath>

#include "nvgate/errors.h"
#include "nvgate/pulse_engine.h"

namespace nvgate {

std::array<double, 5> CompositePulse::offsets() const {
  return {-t2, -t1, 0.0, t1, t2};
}

std::array<double, 5> CompositePulse::phases() const {
  std::array<double, 5> out = kKnillPhases;
  if (base_axis == Axis::kY) {
    for (double& p : out) p += kPi / 2;
  }
  return out;
}

CompositePulse GatePlan::composite(Axis base) const {
  const double period = 2.0 * tau;
  return CompositePulse{base, (0.25 - x2) * period, (0.25 - x1) * period};
}

double resonance_period(const RegisterConfig& cfg, int j, int k) {
  if (k <= 0 || k % 2 == 0) throw SpecError("harmonic must be odd and positive");
  const double w = effective_nuclear_frequency(cfg, j).magnitude;
  if (!(w > 0.0)) throw SpecError("nucleus has zero precession frequency");
  return k * kPi / w;
}

std::array<double, 10> unit_positions(double x1, double x2) {
  return {x1,       x2,       0.25,     0.5 - x2, 0.5 - x1,
          0.5 + x1, 0.5 + x2, 0.75,     1.0 - x2, 1.0 - x1};
}

int ModulationFunction::value(double t) const {
  auto n = std::upper_bound(flips.begin(), flips.end(), t) - flips.begin();
  return (n % 2 == 0) ? 1 : -1;
}

double ModulationFunction::integral(double a, double b) const {
  if (b < a) return -integral(b, a);
  double acc = 0.0;
  double left = a;
  int sign = value(a);
  for (double f : flips) {
    if (f <= a) continue;
    if (f >= b) break;
    acc += sign * (f - left);
    left = f;
    sign = -sign;
  }
  return acc + sign * (b - left);
}

ModulationFunction modulation_function(const SequencePlan& plan) {
  ModulationFunction m;
  m.duration = plan.duration;
  for (const auto& e : plan.events) m.flips.push_back(e.t_start + 0.5 * e.duration);
  std::sort(m.flips.begin(), m.flips.end());
  return m;
}

double fourier_coefficient(const std::vector<double>& flips, int k) {
  const double w = kTwoPi * k;
  double acc = 0.0;
  double left = 0.0;
  int sign = 1;
  for (double f : flips) {
    acc += sign * (std::sin(w * f) - std::sin(w * left));
    left = f;
    sign = -sign;
  }
  acc += sign * (std::sin(w) - std::sin(w * left));
  return 2.0 * acc / w;
}

double fourier_coefficient(const GatePlan& plan, int k) {
  auto u = unit_positions(plan.x1, plan.x2);
  return fourier_coefficient(std::vector<double>(u.begin(), u.end()), k);
}

double axy_fourier(int k, double x1, double x2) {
  const double w = kTwoPi * k;
  return 4.0 / (kPi * k) *
         (2.0 * std::sin(w * x1) - 2.0 * std::sin(w * x2) +
          std::sin(kPi * k / 2.0));
}

double unit_min_gap(double x1, double x2) {
  return std::min({2.0 * x1, x2 - x1, 0.25 - x2});
}

bool spacing_x2(int k, double x1, double f, const SpacingBranch& branch,
                double* x2) {
  const double w = kTwoPi * k;
  const double c = 4.0 / (kPi * k) * (2.0 * std::sin(w * x1) + std::sin(kPi * k / 2.0));
  const double s = (c - f) * kPi * k / 8.0;
  if (std::abs(s) > 1.0) return false;
  const double a = std::asin(s);
  const double base = branch.reflected ? kPi - a : a;
  *x2 = (base + kTwoPi * branch.wrap) / w;
  return true;
}

SpacingChoice select_spacing(int k, double width, double f, double margin,
                             int grid) {
  if (k <= 0 || k % 2 == 0) throw SpecError("harmonic must be odd and positive");
  const double x1_min = 0.5 / k + 0.5 * width + margin;
  SpacingChoice best;
  bool found = false;
  if (x1_min >= 0.25) {
    throw SynthesisError("pulses too long for this harmonic", 0.0);
  }
  for (int i = 0; i < grid; ++i) {
    const double x1 = x1_min + (0.25 - x1_min) * i / (grid - 1);
    for (int reflected = 0; reflected < 2; ++reflected) {
      for (int wrap = -2; wrap <= k + 2; ++wrap) {
        SpacingBranch branch{reflected == 1, wrap};
        double x2;
        if (!spacing_x2(k, x1, f, branch, &x2)) break;
        if (!(x1 < x2 && x2 < 0.25)) continue;
        const double g = unit_min_gap(x1, x2);
        if (g < width + margin) continue;
        if (!found || g > best.min_gap) {
          best = {x1, x2, g, branch};
          found = true;
        }
      }
    }
  }
  if (!found) {
    throw SynthesisError("no pulse spacing reaches the requested f_k", 0.0);
  }
  return best;
}

double lattice_anchor(double frame_phase, double omega, double t) {
  const double a0 = frame_phase / omega;
  const double period = kTwoPi / omega;
  return a0 + period * std::round((t - a0) / period);
}

}  // namespace nvgate
