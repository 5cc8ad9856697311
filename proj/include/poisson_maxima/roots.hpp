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

// Bracketed scalar root finders for monotone functions.

#ifndef POISSON_MAXIMA_ROOTS_HPP
#define POISSON_MAXIMA_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "poisson_maxima/error.hpp"

namespace pmax {

struct RootOptions {
  double f_tol = 1e-10;  // stop once |f(x)| <= f_tol
  int max_iter = 200;
};

struct ValueSlope {
  double value;
  double slope;
};

namespace detail {

inline bool bracket_collapsed(double lo, double hi) {
  const double scale = std::max(std::fabs(lo), std::fabs(hi));
  return hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
}

inline void require_sign_change(double flo, double fhi, const char* who) {
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0.0) == (fhi > 0.0)) {
    throw BracketError(std::string(who) + ": no sign change over the bracket");
  }
}

}  // namespace detail

/// Newton iteration guarded by a bracket [lo, hi] with a sign change.
/// A Newton step that leaves the bracket (or a zero slope) is replaced by
/// bisection, so convergence is unconditional. `fn(x)` returns ValueSlope;
/// `guess` seeds the first Newton step (the midpoint is used if it lies
/// outside the bracket).
template <class Fn>
double newton_bisect(Fn&& fn, double lo, double hi, double guess,
                     const RootOptions& opt = {}) {
  ValueSlope flo = fn(lo);
  const ValueSlope fhi = fn(hi);
  if (flo.value == 0.0) return lo;
  if (fhi.value == 0.0) return hi;
  detail::require_sign_change(flo.value, fhi.value, "newton_bisect");
  const bool lo_positive = flo.value > 0.0;

  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int it = 0; it < opt.max_iter; ++it) {
    const ValueSlope f = fn(x);
    if (std::fabs(f.value) <= opt.f_tol) return x;
    if ((f.value > 0.0) == lo_positive) {
      lo = x;
    } else {
      hi = x;
    }
    if (detail::bracket_collapsed(lo, hi)) return x;
    double next = x - f.value / f.slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw IterationLimitError("newton_bisect: no convergence within max_iter");
}

/// Illinois-modified regula falsi on [lo, hi]; for functions without a
/// cheap derivative.
template <class Fn>
double illinois(Fn&& fn, double lo, double hi, const RootOptions& opt = {}) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  detail::require_sign_change(flo, fhi, "illinois");
  int side = 0;
  for (int it = 0; it < opt.max_iter; ++it) {
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = fn(x);
    if (std::fabs(fx) <= opt.f_tol) return x;
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
    if (detail::bracket_collapsed(lo, hi)) return x;
  }
  throw IterationLimitError("illinois: no convergence within max_iter");
}

}  // namespace pmax

#endif  // POISSON_MAXIMA_ROOTS_HPP
