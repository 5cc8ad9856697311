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

// Slow extended-precision reference for tests and golden files.
//
// Shares no code with specfun: everything runs on 250-digit MPFR numbers,
// log-gamma included. Requires Boost.Multiprecision and libmpfr.

#ifndef POISSON_MAXIMA_ORACLE_HPP
#define POISSON_MAXIMA_ORACLE_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <cstdint>
#include <mpfr.h>
#include <stdexcept>
#include <vector>

namespace pmax::oracle {

inline constexpr unsigned kDigits = 250;

using BigReal =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kDigits>,
                                  boost::multiprecision::et_off>;

/// Widens MPFR's exponent range so e^{-1e12} does not flush to zero. Called
/// by every entry point; cheap and idempotent.
inline void widen_exponent_range() {
  mpfr_set_emin(mpfr_get_emin_min());
  mpfr_set_emax(mpfr_get_emax_max());
}

/// num / den as a BigReal; lambda is passed as an exact rational.
inline BigReal rational(long num, long den = 1) {
  widen_exponent_range();
  return BigReal(num) / BigReal(den);
}

/// Pr[X <= k] = sum_{i=0}^{k} e^-lambda lambda^i / i!, exact term recursion.
inline BigReal poisson_cdf(long k, const BigReal& lambda) {
  widen_exponent_range();
  BigReal term = exp(-lambda);
  BigReal sum = term;
  for (long i = 1; i <= k; ++i) {
    term *= lambda / i;
    sum += term;
  }
  return sum;
}

/// Pr[X > k] summed from the tail, an independent second route to 1 - cdf.
inline BigReal poisson_sf(long k, const BigReal& lambda) {
  widen_exponent_range();
  BigReal term = exp(-lambda);
  for (long i = 1; i <= k + 1; ++i) term *= lambda / i;
  BigReal sum = term;
  const BigReal cutoff = BigReal("1e-240");
  for (long i = k + 2;; ++i) {
    term *= lambda / i;
    sum += term;
    if (BigReal(i) > 2 * lambda && term < cutoff * sum) break;
  }
  return sum;
}

/// Q(k+1)^n - Q(k)^n for integer 1 <= n <= 1e12.
inline BigReal max_pmf(long k, const BigReal& lambda, std::uint64_t n) {
  if (k < 0) throw std::domain_error("oracle::max_pmf: k must be nonnegative");
  const BigReal nn(n);
  const BigReal upper = pow(poisson_cdf(k, lambda), nn);
  if (k == 0) return upper;
  return upper - pow(poisson_cdf(k - 1, lambda), nn);
}

/// pmf of M_n for k = 0..k_max, sharing the cumulative sums.
inline std::vector<BigReal> max_pmf_row(long k_max, const BigReal& lambda, std::uint64_t n) {
  widen_exponent_range();
  const BigReal nn(n);
  std::vector<BigReal> row;
  row.reserve(static_cast<std::size_t>(k_max + 1));
  BigReal term = exp(-lambda);
  BigReal cdf = term;
  BigReal prev_pow = 0;
  for (long k = 0; k <= k_max; ++k) {
    if (k > 0) {
      term *= lambda / k;
      cdf += term;
    }
    BigReal cur = pow(cdf, nn);
    row.push_back(cur - prev_pow);
    prev_pow = cur;
  }
  return row;
}

/// ln g_lambda(x) from e^-lambda lambda^x sum_{i>=1} lambda^i / Gamma(x+i+1),
/// truncated once terms fall below 1e-200 of the partial sum.
inline BigReal log_g(const BigReal& x, const BigReal& lambda) {
  widen_exponent_range();
  BigReal term = exp(log(lambda) - lgamma(x + 2));
  BigReal sum = term;
  const BigReal cutoff = BigReal("1e-200");
  for (long i = 1;; ++i) {
    term *= lambda / (x + i + 1);
    sum += term;
    if (x + i + 1 > 2 * lambda && term < cutoff * sum) break;
  }
  return -lambda + x * log(lambda) + log(sum);
}

struct ModeResult {
  long i_n = 0;       // pmf argmax, ties to the smaller k
  BigReal p_mode;
  BigReal p_two_point;  // pmf(i_n) + pmf(i_n + 1)
  long i_best = 0;    // argmax of pmf(i) + pmf(i + 1)
  BigReal p_best;
};

/// Brute force over k = 0..k_max.
inline ModeResult mode(const BigReal& lambda, std::uint64_t n, long k_max = 200) {
  const auto row = max_pmf_row(k_max + 1, lambda, n);
  const BigReal band("1e-200");
  ModeResult r;
  r.p_mode = row[0];
  for (long k = 1; k <= k_max; ++k) {
    if (row[k] > r.p_mode * (1 + band)) {
      r.p_mode = row[k];
      r.i_n = k;
    }
  }
  r.p_two_point = row[r.i_n] + row[r.i_n + 1];
  r.p_best = row[0] + row[1];
  for (long k = 1; k <= k_max; ++k) {
    const BigReal p = row[k] + row[k + 1];
    if (p > r.p_best * (1 + band)) {
      r.p_best = p;
      r.i_best = k;
    }
  }
  return r;
}

}  // namespace pmax::oracle

#endif  // POISSON_MAXIMA_ORACLE_HPP
