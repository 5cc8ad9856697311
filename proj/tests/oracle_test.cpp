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

#include "poisson_maxima/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "poisson_maxima/specfun.hpp"

namespace pmax::oracle {
namespace {

bool close(const BigReal& a, const BigReal& b, const char* tol) {
  return abs(a - b) <= BigReal(tol) * abs(b);
}

TEST(Oracle, WorkingPrecision) {
  EXPECT_GE(std::numeric_limits<BigReal>::digits10, 200);
}

TEST(Oracle, CdfExamples) {
  EXPECT_TRUE(close(poisson_cdf(0, rational(2)), exp(BigReal(-2)), "1e-240"));
  EXPECT_TRUE(close(poisson_cdf(1, rational(1)), 2 * exp(BigReal(-1)), "1e-240"));
}

TEST(Oracle, MaxPmfExamples) {
  EXPECT_TRUE(close(max_pmf(1, rational(1), 2), 3 * exp(BigReal(-2)), "1e-240"));
  EXPECT_TRUE(close(max_pmf(0, rational(3, 2), 1000), exp(BigReal(-1500)), "1e-230"));
  // e^{-5e12} is far below the default MPFR exponent range
  EXPECT_GT(max_pmf(0, rational(5), 1'000'000'000'000ULL), 0);
}

TEST(Oracle, TwoRoutesForQAgree) {
  for (auto [num, den] : {std::pair{1, 2}, {1, 1}, {2, 1}, {5, 1}}) {
    const BigReal lambda = rational(num, den);
    for (long k = 0; k <= 200; k += 7) {
      EXPECT_TRUE(close(poisson_cdf(k, lambda) + poisson_sf(k, lambda), BigReal(1), "1e-150"))
          << num << "/" << den << " " << k;
    }
  }
}

TEST(Oracle, MaxPmfSumsToOne) {
  for (auto [num, den, n] : {std::tuple{1, 2, 1ULL}, {1, 1, 1000ULL}, {5, 1, 1'000'000'000'000ULL}}) {
    const auto row = max_pmf_row(260, rational(num, den), n);
    BigReal total = 0;
    for (const auto& p : row) total += p;
    EXPECT_TRUE(close(total, BigReal(1), "1e-150")) << num << "/" << den << " " << n;
  }
}

TEST(Oracle, LogGIdentities) {
  const BigReal lambda = rational(2);
  for (long k : {0L, 3L, 17L}) {
    EXPECT_TRUE(close(log_g(BigReal(k), lambda), log(poisson_sf(k, lambda)), "1e-180")) << k;
  }
  const BigReal near_zero("1e-60");
  EXPECT_TRUE(close(log_g(near_zero, lambda), log(1 - exp(-lambda)), "1e-50"));
}

// The fast path checked against the oracle at >= 12 significant digits.
TEST(FastPathAgainstOracle, PoissonCdf) {
  for (auto [num, den] : {std::pair{1, 2}, {1, 1}, {2, 1}, {5, 1}}) {
    const BigReal lambda = rational(num, den);
    const double lam = static_cast<double>(num) / den;
    for (long k = 0; k <= 200; ++k) {
      const double expected = poisson_cdf(k, lambda).convert_to<double>();
      EXPECT_NEAR(std::exp(pmax::poisson_cdf_log(k, lam)), expected, 1e-12 * expected);
      const double log_sf = static_cast<BigReal>(log(poisson_sf(k, lambda))).convert_to<double>();
      EXPECT_NEAR(pmax::poisson_sf_log(k, lam), log_sf, 1e-12 * std::max(1.0, std::fabs(log_sf)));
    }
  }
}

TEST(FastPathAgainstOracle, LogG) {
  for (double lam : {0.5, 1.0, 2.0, 5.0}) {
    for (double x : {0.125, 0.75, 3.5, 19.25, 80.0, 320.0}) {
      const double expected = log_g(BigReal(x), BigReal(lam)).convert_to<double>();
      EXPECT_NEAR(pmax::log_g(x, lam), expected, 1e-12 * std::max(1.0, std::fabs(expected)))
          << lam << " " << x;
    }
  }
}

}  // namespace
}  // namespace pmax::oracle
