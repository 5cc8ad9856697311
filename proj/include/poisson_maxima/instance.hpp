// Copyright 2026 The poisson-maxima Authors.
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

#ifndef POISSON_MAXIMA_INSTANCE_HPP
#define POISSON_MAXIMA_INSTANCE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "poisson_maxima/error.hpp"

namespace pmax {

/// One maximum-of-Poissons problem: n iid Poisson(lambda) variables.
///
/// n only ever enters through n * ln Q, so it is carried as ln n. That reaches
/// n = 1e40 (and far beyond) without big integers, and allows real n such as
/// 10^0.25 on plotting grids.
class ProblemInstance {
 public:
  static ProblemInstance from_ln_n(double lambda, double ln_n) {
    return ProblemInstance(lambda, ln_n);
  }
  static ProblemInstance from_log10_n(double lambda, double log10_n) {
    return ProblemInstance(lambda, log10_n * std::numbers::ln10);
  }
  static ProblemInstance from_n(double lambda, std::uint64_t n) {
    if (n == 0) throw DomainError("ProblemInstance: n must be at least 1");
    return ProblemInstance(lambda, std::log(static_cast<double>(n)));
  }

  double lambda() const noexcept { return lambda_; }
  double ln_n() const noexcept { return ln_n_; }
  double log10_n() const noexcept { return ln_n_ / std::numbers::ln10; }

 private:
  ProblemInstance(double lambda, double ln_n) : lambda_(lambda), ln_n_(ln_n) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw DomainError("ProblemInstance: lambda must be positive and finite");
    }
    if (!(ln_n >= 0.0) || !std::isfinite(ln_n)) {
      throw DomainError("ProblemInstance: ln n must be finite and nonnegative");
    }
  }

  double lambda_;
  double ln_n_;
};

/// A probability carried as its natural logarithm. -inf is probability 0.
class LogProb {
 public:
  static constexpr double kSlack = 1e-9;

  constexpr LogProb() = default;
  explicit LogProb(double value) : value_(value) {
    if (std::isnan(value) || value > kSlack) {
      throw DomainError("LogProb: log-probability must be <= 0");
    }
  }
  static LogProb zero() { return LogProb(-std::numeric_limits<double>::infinity()); }

  double value() const noexcept { return value_; }
  double prob() const { return std::exp(value_); }
  bool is_zero() const noexcept { return std::isinf(value_); }

  friend bool operator==(const LogProb&, const LogProb&) = default;

 private:
  double value_ = 0.0;
};

}  // namespace pmax

#endif  // POISSON_MAXIMA_INSTANCE_HPP
