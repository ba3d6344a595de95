// Copyright 2026 The Signet Authors. All Rights Reserved.
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

#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace signet {

// Invalid parameters or configuration. Maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that cannot be carried out numerically. Maps to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested time is at or beyond the finite-time singularity of dY/dt = Y^2,
// or the resolvent is too ill-conditioned to trust.
class BlowupError : public NumericalError {
 public:
  BlowupError(const std::string& what, double t_star)
      : NumericalError(what), t_star_(t_star) {}
  double t_star() const noexcept { return t_star_; }

 private:
  double t_star_;
};

// Numerical overflow during integration; carries the last time reached.
class OverflowError : public NumericalError {
 public:
  OverflowError(const std::string& what, double last_valid_t)
      : NumericalError(what), last_valid_t_(last_valid_t) {}
  double last_valid_t() const noexcept { return last_valid_t_; }

 private:
  double last_valid_t_;
};

// Transition boundary whose discriminant is negative.
class InfeasibleBoundary : public NumericalError {
 public:
  InfeasibleBoundary(const std::string& what, double discriminant)
      : NumericalError(what), discriminant_(discriminant) {}
  double discriminant() const noexcept { return discriminant_; }

 private:
  double discriminant_;
};

}  // namespace signet
