// Copyright 2026 The nmqem Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace nmq {

/// Coherence magnitude fell below the divergence threshold; the time-local
/// rate gamma(t) = -Re[c'/c] is undefined there.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double time, const std::string& what)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Trace drift exceeded tolerance during integration.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(int step, double time, const std::string& what)
      : std::runtime_error(what), step_(step), time_(time) {}
  int step() const { return step_; }
  double time() const { return time_; }

 private:
  int step_;
  double time_;
};

/// Fock-space truncation overflowed: population reached the top levels.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(double time, const std::string& what)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace nmq
