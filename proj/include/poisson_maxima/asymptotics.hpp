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

// Asymptotic locators for the most probable value of the maximum.
//
// The tail interpolant satisfies, as x -> infinity,
//
//   ln g(x) = -x ln x + (1 + ln lambda) x - (3/2) ln x
//             + (ln lambda - lambda - ln(2 pi)/2) + (lambda - 13/12)/x + O(1/x^2)
//
// and the modal value sits near the root of ln g(x) = -ln n. Keeping the two
// leading terms gives the Lambert-W closed form x0; one Newton step on the
// non-vanishing terms gives x1. The formulas are meaningful once
// x0 > max(3, 2 lambda); below that use maxdist::mode directly.

#ifndef POISSON_MAXIMA_ASYMPTOTICS_HPP
#define POISSON_MAXIMA_ASYMPTOTICS_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "poisson_maxima/error.hpp"
#include "poisson_maxima/instance.hpp"
#include "poisson_maxima/roots.hpp"
#include "poisson_maxima/specfun.hpp"

namespace pmax {

namespace detail {

inline constexpr double kExpansionLowerBound = 1.0;
inline constexpr double kSingularDenominator = 1e-9;
// Bracket for the beta / continuous-root solvers, and how many times the
// upper end may be doubled before giving up.
inline constexpr double kBetaBracketLo = 1e-6;
inline constexpr double kBracketHeadroom = 50.0;
inline constexpr int kBracketWidenings = 8;

inline double expansion_constant(double lambda) {
  return std::log(lambda) - lambda - 0.5 * std::log(2.0 * std::numbers::pi);
}

}  // namespace detail

/// h(x): the expansion of ln g_lambda(x) truncated after the 1/x term.
inline double log_g_expansion(double x, double lambda) {
  if (!(x > detail::kExpansionLowerBound)) {
    throw DomainError("log_g_expansion: x must exceed 1");
  }
  if (!(lambda > 0.0)) throw DomainError("log_g_expansion: lambda must be positive");
  const double lx = std::log(x);
  return -x * lx + (1.0 + std::log(lambda)) * x - 1.5 * lx +
         detail::expansion_constant(lambda) + (lambda - 13.0 / 12.0) / x;
}

/// h'(x) = ln lambda - ln x - 3/(2x) - (lambda - 13/12)/x^2.
inline double log_g_expansion_slope(double x, double lambda) {
  if (!(x > detail::kExpansionLowerBound)) {
    throw DomainError("log_g_expansion_slope: x must exceed 1");
  }
  if (!(lambda > 0.0)) throw DomainError("log_g_expansion_slope: lambda must be positive");
  return std::log(lambda) - std::log(x) - 1.5 / x - (lambda - 13.0 / 12.0) / (x * x);
}

/// x0 = ln n / W0(ln n / (e lambda)).
inline double x0(const ProblemInstance& inst) {
  if (inst.ln_n() == 0.0) throw DegenerateInputError("x0: undefined at n = 1");
  return inst.ln_n() / lambert_w0(inst.ln_n() / (std::numbers::e * inst.lambda()));
}

/// x1 = x0 + (ln lambda - lambda - ln(2 pi)/2 - (3/2) ln x0) / (ln x0 - ln lambda),
/// one Newton step from x0 on the terms of h that survive as n -> infinity.
inline double x1(const ProblemInstance& inst) {
  const double start = x0(inst);
  const double log_start = std::log(start);
  const double denom = log_start - std::log(inst.lambda());
  if (std::fabs(denom) < detail::kSingularDenominator) {
    throw SingularError("x1: ln x0 - ln lambda vanishes");
  }
  return start + (detail::expansion_constant(inst.lambda()) - 1.5 * log_start) / denom;
}

/// Newton iterates of h(x) + ln n = 0 starting at x_start. Returns every
/// iterate; throws DivergenceError when one leaves (1, 10 x_start).
inline std::vector<double> newton_refine(const ProblemInstance& inst, double x_start,
                                         int steps) {
  if (!(x_start > 1.0)) throw DomainError("newton_refine: x_start must exceed 1");
  if (steps < 0) throw DomainError("newton_refine: steps must be nonnegative");
  std::vector<double> iterates;
  iterates.reserve(static_cast<std::size_t>(steps));
  double x = x_start;
  for (int i = 0; i < steps; ++i) {
    const double residual = log_g_expansion(x, inst.lambda()) + inst.ln_n();
    x -= residual / log_g_expansion_slope(x, inst.lambda());
    if (!(x > 1.0 && x < 10.0 * x_start)) {
      throw DivergenceError("newton_refine: iterate left (1, 10 x_start)");
    }
    iterates.push_back(x);
  }
  return iterates;
}

/// ln n / ln ln n, the first-order growth rate (independent of lambda).
inline double kimber_estimate(const ProblemInstance& inst) {
  if (!(inst.ln_n() > 1.0)) throw DomainError("kimber_estimate: needs ln n > 1");
  return inst.ln_n() / std::log(inst.ln_n());
}

namespace detail {

// Upper bracket end for a decreasing f, doubled until f(hi) < 0.
template <class Fn>
double widen_upper(Fn&& f, double lo, double hi, const char* who) {
  for (int i = 0; i <= kBracketWidenings; ++i) {
    if (f(hi) < 0.0) return hi;
    hi = lo + 2.0 * (hi - lo);
  }
  throw BracketError(std::string(who) + ": no sign change after widening");
}

inline double bracket_seed(const ProblemInstance& inst) {
  return x0(inst) + kBracketHeadroom;
}

}  // namespace detail

/// beta_n: the root of Pr[Poisson(lambda) >= beta] = P(beta, lambda) = 1/n,
/// with the tail extended to real beta through the incomplete gamma function.
/// Bracketed in (1e-6, x0 + 50), widened if needed, then solved by Illinois
/// regula falsi on ln P(beta, lambda) + ln n.
inline double anderson_beta(const ProblemInstance& inst, const Accuracy& acc = {}) {
  if (!(inst.ln_n() > 0.0)) throw DomainError("anderson_beta: needs n > 1");
  acc.validate();
  auto f = [&](double beta) { return log_reg_gamma_p(beta, inst.lambda(), acc) + inst.ln_n(); };
  const double lo = detail::kBetaBracketLo;
  if (!(f(lo) > 0.0)) throw BracketError("anderson_beta: n too close to 1 for the bracket");
  const double hi = detail::widen_upper(f, lo, detail::bracket_seed(inst), "anderson_beta");
  return illinois(f, lo, hi, RootOptions{.f_tol = 1e-11, .max_iter = 300});
}

/// Root of ln g_lambda(x) = -ln n on the series-evaluated interpolant; the
/// reference the asymptotic formulas are judged against. Searches x > -1, so
/// it exists for every n > 1 (g decreases from 1 at x = -1).
inline double continuous_root(const ProblemInstance& inst, const Accuracy& acc = {}) {
  if (!(inst.ln_n() > 0.0)) throw DomainError("continuous_root: needs n > 1");
  acc.validate();
  auto f = [&](double x) {
    const LogGValue g = log_g_with_slope(x, inst.lambda(), acc);
    return ValueSlope{g.value + inst.ln_n(), g.slope};
  };
  auto value = [&](double x) { return f(x).value; };
  const double lo = detail::kBetaBracketLo - 1.0;
  if (!(value(lo) > 0.0)) throw BracketError("continuous_root: n too close to 1 for the bracket");
  const double hi = detail::widen_upper(value, lo, detail::bracket_seed(inst) - 1.0,
                                        "continuous_root");
  return newton_bisect(f, lo, hi, x0(inst) - 1.0, RootOptions{.f_tol = 1e-11, .max_iter = 300});
}

/// Every asymptotic quantity for one instance. A field is empty when its
/// formula raised a typed error; the message is kept in `notes`.
struct AsymptoticReport {
  std::optional<double> x0;
  std::optional<double> x1;
  std::vector<double> x_newton;
  std::optional<double> kimber;
  std::optional<double> beta_n;
  std::optional<double> continuous_root;
  std::vector<std::string> notes;
};

namespace detail {

template <class Fn>
std::optional<double> capture(Fn&& fn, std::vector<std::string>& notes) {
  try {
    return fn();
  } catch (const Error& e) {
    notes.emplace_back(e.what());
    return std::nullopt;
  }
}

}  // namespace detail

inline AsymptoticReport asymptotic_report(const ProblemInstance& inst, int newton_steps = 0,
                                          const Accuracy& acc = {}) {
  AsymptoticReport r;
  r.x0 = detail::capture([&] { return x0(inst); }, r.notes);
  if (r.x0) r.x1 = detail::capture([&] { return x1(inst); }, r.notes);
  if (newton_steps > 0 && r.x0) {
    try {
      r.x_newton = newton_refine(inst, *r.x0, newton_steps);
    } catch (const Error& e) {
      r.notes.emplace_back(e.what());
    }
  }
  r.kimber = detail::capture([&] { return kimber_estimate(inst); }, r.notes);
  r.beta_n = detail::capture([&] { return anderson_beta(inst, acc); }, r.notes);
  r.continuous_root = detail::capture([&] { return continuous_root(inst, acc); }, r.notes);
  return r;
}

}  // namespace pmax

#endif  // POISSON_MAXIMA_ASYMPTOTICS_HPP
