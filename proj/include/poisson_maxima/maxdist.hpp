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

// Exact distribution of M_n = max(X_1, ..., X_n), X_i iid Poisson(lambda):
//
//   Pr[M_n <= k] = Q(k+1, lambda)^n
//   Pr[M_n = k]  = Q(k+1, lambda)^n - Q(k, lambda)^n
//
// evaluated entirely in log space so n = 1e40 is routine.

#ifndef POISSON_MAXIMA_MAXDIST_HPP
#define POISSON_MAXIMA_MAXDIST_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "poisson_maxima/asymptotics.hpp"
#include "poisson_maxima/error.hpp"
#include "poisson_maxima/instance.hpp"
#include "poisson_maxima/specfun.hpp"

namespace pmax {

/// ln Pr[M_n <= k] = n ln Q(k+1, lambda). The product is formed as
/// -exp(ln n + ln(-ln Q)), so n = 1e40 against ln Q = -1e-50 is exact to
/// double precision. Negative k gives probability zero.
inline LogProb max_cdf_log(const ProblemInstance& inst, long k, const Accuracy& acc = {}) {
  if (k < 0) return LogProb::zero();
  if (inst.ln_n() == 0.0) return LogProb(std::min(0.0, poisson_cdf_log(k, inst.lambda(), acc)));
  const double log_mag = inst.ln_n() + poisson_log_neg_log_cdf(k, inst.lambda(), acc);
  return LogProb(-std::exp(log_mag));
}

namespace detail {

// ln(e^a - e^b) for b <= a, probability zero when rounding leaves b >= a.
inline LogProb log_diff(LogProb a, LogProb b) {
  if (b.is_zero()) return a;
  if (!(b.value() < a.value())) return LogProb::zero();
  return LogProb(a.value() + log1mexp(b.value() - a.value()));
}

}  // namespace detail

/// ln Pr[M_n = k]; for k = 0 this is max_cdf_log(inst, 0).
inline LogProb max_pmf_log(const ProblemInstance& inst, long k, const Accuracy& acc = {}) {
  if (k < 0) throw DomainError("max_pmf_log: k must be nonnegative");
  return detail::log_diff(max_cdf_log(inst, k, acc), max_cdf_log(inst, k - 1, acc));
}

/// Inclusive k-range a scan covers.
struct ScanWindow {
  long lo;
  long hi;
};

/// Default scan range: x0 -+ 40, or [0, ceil(10 lambda) + 60] when ln n < 1.
inline ScanWindow default_window(const ProblemInstance& inst) {
  if (inst.ln_n() < 1.0) {
    return {0, static_cast<long>(std::ceil(10.0 * inst.lambda())) + 60};
  }
  const double centre = x0(inst);
  return {std::max(0L, static_cast<long>(std::floor(centre)) - 40),
          static_cast<long>(std::ceil(centre)) + 40};
}

/// Same window with its half-width doubled (lower end clamped at 0).
inline ScanWindow widened(const ScanWindow& w) {
  const long half = std::max(1L, (w.hi - w.lo + 1) / 2);
  return {std::max(0L, w.lo - half), w.hi + half};
}

struct PmfPoint {
  long k;
  LogProb log_p;
};

/// pmf of M_n over a window, plus the entry just past its upper end.
class PmfScan {
 public:
  static constexpr double kMassTolerance = 1e-9;

  PmfScan(const ProblemInstance& inst, ScanWindow window, const Accuracy& acc = {})
      : window_(window) {
    if (window.lo < 0 || window.hi < window.lo) throw DomainError("PmfScan: bad window");
    slice_.reserve(static_cast<std::size_t>(window.hi - window.lo + 2));
    LogProb below = max_cdf_log(inst, window.lo - 1, acc);
    for (long k = window.lo; k <= window.hi + 1; ++k) {
      const LogProb cdf = max_cdf_log(inst, k, acc);
      slice_.push_back({k, detail::log_diff(cdf, below)});
      below = cdf;
    }
    mass_ = 0.0;
    for (std::size_t i = 0; i + 1 < slice_.size(); ++i) mass_ += slice_[i].log_p.prob();
  }

  const ScanWindow& window() const noexcept { return window_; }
  double mass() const noexcept { return mass_; }
  bool accepted() const noexcept { return mass_ >= 1.0 - kMassTolerance; }

  void require_accepted() const {
    if (accepted()) return;
    std::ostringstream msg;
    msg << "pmf mass " << mass_ << " inside [" << window_.lo << ", " << window_.hi
        << "] is below 1 - 1e-9; widen the window";
    throw WindowError(msg.str(), static_cast<int>(window_.lo), static_cast<int>(window_.hi),
                      mass_);
  }

  // Entries for k in [lo, hi + 1].
  const std::vector<PmfPoint>& points() const noexcept { return slice_; }

  LogProb at(long k) const { return slice_.at(static_cast<std::size_t>(k - window_.lo)).log_p; }

 private:
  ScanWindow window_;
  std::vector<PmfPoint> slice_;
  double mass_ = 0.0;
};

/// Exact modal value of M_n and the focussing probabilities around it.
struct ModeReport {
  long i_n = 0;             // argmax_k Pr[M_n = k]
  double p_mode = 0.0;      // Pr[M_n = i_n]
  double p_two_point = 0.0; // Pr[M_n in {i_n, i_n + 1}]
  long scan_lo = 0;
  long scan_hi = 0;
  double window_mass = 0.0;
  std::vector<PmfPoint> pmf_slice;  // k in [scan_lo, scan_hi]
};

/// Log-space band inside which two pmf values count as tied; ties go to the
/// smaller k.
inline constexpr double kTieBand = 1e-12;

inline ModeReport mode(const ProblemInstance& inst, ScanWindow window, const Accuracy& acc = {}) {
  const PmfScan scan(inst, window, acc);
  scan.require_accepted();
  ModeReport r;
  r.scan_lo = window.lo;
  r.scan_hi = window.hi;
  r.window_mass = scan.mass();
  const auto& pts = scan.points();
  r.pmf_slice.assign(pts.begin(), pts.end() - 1);
  double best = -std::numeric_limits<double>::infinity();
  for (const PmfPoint& p : r.pmf_slice) {
    if (p.log_p.value() > best + kTieBand) {
      best = p.log_p.value();
      r.i_n = p.k;
    }
  }
  r.p_mode = scan.at(r.i_n).prob();
  r.p_two_point = r.p_mode + scan.at(r.i_n + 1).prob();
  return r;
}

/// mode() over default_window(inst). Throws WindowError if the mass check
/// fails; see mode_widening for the retry protocol.
inline ModeReport mode(const ProblemInstance& inst, const Accuracy& acc = {}) {
  return mode(inst, default_window(inst), acc);
}

/// The pair {i, i+1} carrying the most mass, and that mass.
struct TwoPoint {
  long i = 0;
  double p = 0.0;
};

inline TwoPoint two_point_best(const ProblemInstance& inst, ScanWindow window,
                               const Accuracy& acc = {}) {
  const PmfScan scan(inst, window, acc);
  scan.require_accepted();
  TwoPoint best{window.lo, -1.0};
  const auto& pts = scan.points();
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const double p = pts[j].log_p.prob() + pts[j + 1].log_p.prob();
    if (p > best.p * (1.0 + kTieBand)) best = {pts[j].k, p};
  }
  return best;
}

inline TwoPoint two_point_best(const ProblemInstance& inst, const Accuracy& acc = {}) {
  return two_point_best(inst, default_window(inst), acc);
}

/// Calls fn(window) starting from default_window, doubling the half-width on
/// WindowError up to `attempts` times.
template <class Fn>
auto with_widening(const ProblemInstance& inst, Fn&& fn, int attempts = 4) {
  ScanWindow w = default_window(inst);
  for (int i = 0;; ++i) {
    try {
      return fn(w);
    } catch (const WindowError&) {
      if (i >= attempts) throw;
      w = widened(w);
    }
  }
}

inline ModeReport mode_widening(const ProblemInstance& inst, const Accuracy& acc = {}) {
  return with_widening(inst, [&](ScanWindow w) { return mode(inst, w, acc); });
}

inline TwoPoint two_point_best_widening(const ProblemInstance& inst, const Accuracy& acc = {}) {
  return with_widening(inst, [&](ScanWindow w) { return two_point_best(inst, w, acc); });
}

}  // namespace pmax

#endif  // POISSON_MAXIMA_MAXDIST_HPP
