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

// Special functions for the Poisson-maximum problem: log-gamma, digamma,
// log-domain Poisson tails, the regularized incomplete gamma pair P/Q, the
// continuous tail interpolant g_lambda(x) and the principal Lambert W branch.
//
// Everything here is a pure function of its arguments.

#ifndef POISSON_MAXIMA_SPECFUN_HPP
#define POISSON_MAXIMA_SPECFUN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "poisson_maxima/error.hpp"

namespace pmax {

/// Tolerance and iteration cap shared by the series and continued fractions.
struct Accuracy {
  double rel_tol = 1e-13;
  int max_iter = 500;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1e-6)) {
      throw DomainError("Accuracy: rel_tol must lie in (0, 1e-6)");
    }
    if (max_iter < 10) throw DomainError("Accuracy: max_iter must be >= 10");
  }
};

namespace detail {

inline constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2 pi)/2
inline constexpr double kStirlingShift = 15.0;

// B_{2k} / (2k (2k-1)) for k = 1..8; the Stirling series for ln Gamma.
// Truncation error after eight terms at z >= 15 is below 2e-21.
inline constexpr std::array<double, 8> kStirlingCoeffs = {
    1.0 / 12.0,           -1.0 / 360.0,   1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0, 1.0 / 156.0,
    -3617.0 / 122400.0};

// B_{2k} / (2k) for k = 1..7; the asymptotic series for digamma.
inline constexpr std::array<double, 7> kDigammaCoeffs = {
    1.0 / 12.0,  -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};

// ln(1 - e^d) for d <= 0.
inline double log1mexp(double d) {
  if (d > -std::numbers::ln2) return std::log(-std::expm1(d));
  return std::log1p(-std::exp(d));
}

// Running sum of positive terms kept as scale * exp(log_scale); rescales
// before overflow so tail sums of huge terms never produce inf.
class ScaledSum {
 public:
  explicit ScaledSum(double log_first) : log_scale_(log_first) {}

  void add(double term) { sum_ += term; }
  double sum() const { return sum_; }

  // Returns the factor the caller must apply to its running term.
  double renormalize() {
    if (sum_ < 1e280) return 1.0;
    const double factor = 1.0 / sum_;
    log_scale_ += std::log(sum_);
    sum_ = 1.0;
    return factor;
  }

  double log_value() const { return log_scale_ + std::log(sum_); }

 private:
  double log_scale_;
  double sum_ = 1.0;
};

inline double convergence_tol(const Accuracy& acc) {
  return std::max(acc.rel_tol * 1e-3, 2.0 * std::numeric_limits<double>::epsilon());
}

inline int iteration_cap(const Accuracy& acc, double lambda) {
  return acc.max_iter + static_cast<int>(std::ceil(2.0 * lambda));
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
///
/// Shifts the argument up to z >= 15 with the recurrence
/// Gamma(x) = Gamma(x + m) / (x (x+1) ... (x+m-1)) and evaluates the
/// Stirling series with the eight Bernoulli coefficients in
/// detail::kStirlingCoeffs. Relative error is below 1e-14 away from the zeros
/// at x = 1 and x = 2, where the absolute error is below 1e-14. Integers up
/// to 23 go through the exactly representable factorial instead.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite");
  }
  if (x <= 23.0 && x == std::floor(x)) {
    double factorial = 1.0;  // (x-1)! <= 22! is exact in a double
    for (double k = 2.0; k < x; k += 1.0) factorial *= k;
    return std::log(factorial);
  }
  double product = 1.0;
  while (x < detail::kStirlingShift) {
    product *= x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double c : detail::kStirlingCoeffs) {
    series += c * power;
    power *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + detail::kHalfLog2Pi + series -
         std::log(product);
}

/// psi(x) = d/dx ln Gamma(x), x > 0.
inline double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("digamma: argument must be positive and finite");
  }
  double shift = 0.0;
  while (x < detail::kStirlingShift) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv2;
  for (double c : detail::kDigammaCoeffs) {
    series += c * power;
    power *= inv2;
  }
  return std::log(x) - 0.5 / x - series - shift;
}

/// ln Pr[X = k] for X ~ Poisson(lambda).
inline double log_poisson_pmf(long k, double lambda) {
  if (k < 0) throw DomainError("log_poisson_pmf: k must be nonnegative");
  if (!(lambda > 0.0)) throw DomainError("log_poisson_pmf: lambda must be positive");
  const double kd = static_cast<double>(k);
  return -lambda + kd * std::log(lambda) - log_gamma(kd + 1.0);
}

/// ln Pr[X > k], summed directly from the tail.
///
/// The series starts at the pmf of k+1 and advances with
/// term_{i+1} = term_i * lambda / (i + 1). It never complements the CDF, so it
/// stays accurate when the result is -1e5.
inline double poisson_sf_log(long k, double lambda, const Accuracy& acc = {}) {
  if (k < 0) throw DomainError("poisson_sf_log: k must be nonnegative");
  const double log_first = log_poisson_pmf(k + 1, lambda);
  detail::ScaledSum sum(log_first);
  double term = 1.0;
  const int cap = detail::iteration_cap(acc, lambda);
  for (int it = 0;; ++it) {
    if (it > cap) throw IterationLimitError("poisson_sf_log: tail series did not converge");
    // index of the current term is k + 1 + it
    const double next_index = static_cast<double>(k + 2 + it);
    const double ratio = lambda / next_index;
    term *= ratio;
    sum.add(term);
    term *= sum.renormalize();
    if (ratio < 0.5 && term < acc.rel_tol * sum.sum()) break;
  }
  return sum.log_value();
}

namespace detail {

// ln sum_{i=0}^{k} pmf(i), anchored at the largest head term. Accurate in
// relative terms for the CDF itself, not for its logarithm near 0.
inline double poisson_cdf_log_head(long k, double lambda, const Accuracy& acc) {
  const long anchor = std::min<long>(k, static_cast<long>(std::floor(lambda)));
  ScaledSum sum(log_poisson_pmf(anchor, lambda));
  double term = 1.0;
  for (long i = anchor; i > 0; --i) {
    const double ratio = static_cast<double>(i) / lambda;
    term *= ratio;
    sum.add(term);
    if (ratio < 0.5 && term < acc.rel_tol * sum.sum()) break;
  }
  term = 1.0;
  for (long i = anchor + 1; i <= k; ++i) {
    const double ratio = lambda / static_cast<double>(i);
    term *= ratio;
    sum.add(term);
    if (ratio < 0.5 && term < acc.rel_tol * sum.sum()) break;
  }
  return sum.log_value();
}

inline constexpr double kLogHalf = -std::numbers::ln2;

}  // namespace detail

/// ln Pr[X <= k] = ln Q(k+1, lambda).
///
/// Where the upper tail is below 1/2 the result is log1p(-sf) with sf from
/// the direct tail series, which keeps full relative accuracy even when the
/// log is -1e-50. Otherwise the head terms are summed in log space.
inline double poisson_cdf_log(long k, double lambda, const Accuracy& acc = {}) {
  if (k < 0) throw DomainError("poisson_cdf_log: k must be nonnegative");
  if (!(lambda > 0.0)) throw DomainError("poisson_cdf_log: lambda must be positive");
  if (static_cast<double>(k) + 1.0 > lambda) {
    const double sf = poisson_sf_log(k, lambda, acc);
    if (sf < detail::kLogHalf) return std::log1p(-std::exp(sf));
  }
  return detail::poisson_cdf_log_head(k, lambda, acc);
}

/// ln(-ln Pr[X <= k]), well defined down to Pr[X > k] = 1e-300 and beyond:
/// for a tiny tail it is sf_log + ln(-log1p(-s)/s).
inline double poisson_log_neg_log_cdf(long k, double lambda, const Accuracy& acc = {}) {
  if (k < 0) throw DomainError("poisson_log_neg_log_cdf: k must be nonnegative");
  if (!(lambda > 0.0)) throw DomainError("poisson_log_neg_log_cdf: lambda must be positive");
  if (static_cast<double>(k) + 1.0 > lambda) {
    const double sf = poisson_sf_log(k, lambda, acc);
    if (sf < detail::kLogHalf) {
      const double s = std::exp(sf);
      if (s == 0.0) return sf;
      return sf + std::log(-std::log1p(-s) / s);
    }
  }
  return std::log(-detail::poisson_cdf_log_head(k, lambda, acc));
}

namespace detail {

// ln P(a, x) by the power series; use for x < a + 1.
inline double log_gamma_p_series(double a, double x, const Accuracy& acc) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < acc.max_iter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * convergence_tol(acc)) {
      return std::log(sum) - x + a * std::log(x) - log_gamma(a);
    }
  }
  throw IterationLimitError("reg_gamma: series did not converge");
}

// ln Q(a, x) by the Lentz continued fraction; use for x >= a + 1.
inline double log_gamma_q_cf(double a, double x, const Accuracy& acc) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= acc.max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < convergence_tol(acc)) {
      return std::log(h) - x + a * std::log(x) - log_gamma(a);
    }
  }
  throw IterationLimitError("reg_gamma: continued fraction did not converge");
}

inline void check_gamma_args(double a, double x, const char* who) {
  if (!(a > 0.0) || !(x > 0.0) || !std::isfinite(a) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": a and x must be positive and finite");
  }
}

}  // namespace detail

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for P below the x = a + 1 crossover, continued fraction above.
inline double reg_gamma_q(double a, double x, const Accuracy& acc = {}) {
  detail::check_gamma_args(a, x, "reg_gamma_q");
  acc.validate();
  if (x < a + 1.0) return -std::expm1(detail::log_gamma_p_series(a, x, acc));
  return std::exp(detail::log_gamma_q_cf(a, x, acc));
}

/// Lower regularized incomplete gamma P(a, x) = 1 - Q(a, x).
inline double reg_gamma_p(double a, double x, const Accuracy& acc = {}) {
  detail::check_gamma_args(a, x, "reg_gamma_p");
  acc.validate();
  if (x < a + 1.0) return std::exp(detail::log_gamma_p_series(a, x, acc));
  return -std::expm1(detail::log_gamma_q_cf(a, x, acc));
}

/// ln P(a, x), accurate when P is far below double range.
inline double log_reg_gamma_p(double a, double x, const Accuracy& acc = {}) {
  detail::check_gamma_args(a, x, "log_reg_gamma_p");
  acc.validate();
  if (x < a + 1.0) return detail::log_gamma_p_series(a, x, acc);
  return detail::log1mexp(detail::log_gamma_q_cf(a, x, acc));
}

/// Value and x-derivative of ln g_lambda(x).
struct LogGValue {
  double value;
  double slope;
};

/// ln g_lambda(x) and d/dx ln g_lambda(x) for x > -1, where
/// g_lambda(x) = 1 - Gamma(x+1, lambda)/Gamma(x+1)
///             = e^-lambda lambda^x sum_{i>=1} lambda^i / Gamma(x+i+1).
///
/// Terms follow t_{i+1} = t_i lambda / (x+i+1). The slope weights each term
/// by -psi(x+i+1), with psi advanced by the same recurrence.
inline LogGValue log_g_with_slope(double x, double lambda, const Accuracy& acc = {}) {
  if (!(x > -1.0) || !std::isfinite(x)) throw DomainError("log_g: x must exceed -1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("log_g: lambda must be positive");
  }
  const double log_lambda = std::log(lambda);
  detail::ScaledSum sum(log_lambda - log_gamma(x + 2.0));
  double psi = digamma(x + 2.0);
  double weighted = psi;  // sum of t_i psi_i, in the same scale as sum
  double term = 1.0;
  const int cap = detail::iteration_cap(acc, lambda);
  for (int i = 1;; ++i) {
    if (i > cap) throw IterationLimitError("log_g: series did not converge");
    const double step = x + static_cast<double>(i) + 1.0;
    const double ratio = lambda / step;
    term *= ratio;
    psi += 1.0 / step;
    sum.add(term);
    weighted += term * psi;
    const double factor = sum.renormalize();
    term *= factor;
    weighted *= factor;
    if (ratio < 0.5 && term < acc.rel_tol * sum.sum()) break;
  }
  return {-lambda + x * log_lambda + sum.log_value(),
          log_lambda - weighted / sum.sum()};
}

/// ln g_lambda(x); see log_g_with_slope. Matches poisson_sf_log at integers.
inline double log_g(double x, double lambda, const Accuracy& acc = {}) {
  return log_g_with_slope(x, lambda, acc).value;
}

/// Principal branch W0 of the Lambert W function, z >= -1/e.
inline double lambert_w0(double z) {
  constexpr double kInvE = 0.36787944117144232160;
  if (std::isnan(z)) throw DomainError("lambert_w0: NaN argument");
  if (z < -kInvE - 1e-15) throw DomainError("lambert_w0: argument below -1/e");
  if (z <= -kInvE) return -1.0;
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return z;

  double w;
  if (z > std::numbers::e) {
    const double l1 = std::log(z);
    w = l1 - std::log(l1);
  } else if (z < -0.25) {
    // series about the branch point
    const double p = std::sqrt(2.0 * (std::numbers::e * z + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (z <= 0.25) {
    w = z;
  } else {
    w = std::log1p(z);
  }

  constexpr int kMaxHalley = 100;
  for (int it = 0; it < kMaxHalley; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) return w;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    w -= dw;
    if (std::fabs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(w))) {
      return w;
    }
  }
  throw IterationLimitError("lambert_w0: Halley iteration did not converge");
}

}  // namespace pmax

#endif  // POISSON_MAXIMA_SPECFUN_HPP
