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

#ifndef NVGATE_ERRORS_H_
#define NVGATE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace nvgate {

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HermiticityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed specifications and configurations.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when the tuner cannot reach the requested conditional phase.
class SynthesisError : public std::runtime_error {
 public:
  SynthesisError(const std::string& what, double best_phase)
      : std::runtime_error(what), best_phase_(best_phase) {}
  double best_phase() const { return best_phase_; }

 private:
  double best_phase_;
};

}  // namespace nvgate

#endif  // NVGATE_ERRORS_H_
