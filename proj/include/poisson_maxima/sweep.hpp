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

// Grid sweeps of the distribution, focussing probability and modal value,
// with locked CSV / JSON serialization.
//
// Rows are computed independently per (lambda, log10 n) group and may run on
// several threads; output order is always lambda, then log10 n, then k.

#ifndef POISSON_MAXIMA_SWEEP_HPP
#define POISSON_MAXIMA_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "poisson_maxima/asymptotics.hpp"
#include "poisson_maxima/error.hpp"
#include "poisson_maxima/instance.hpp"
#include "poisson_maxima/maxdist.hpp"

namespace pmax {

/// A table cell: null (typed numeric error), an integer or a real.
using Cell = std::variant<std::monostate, std::int64_t, double>;

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;  // one per null cell cause, in row order
};

enum class Format { kCsv, kJson };

namespace detail {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (std::isfinite(v)) return format_real(v);
  }
  return "null";
}

inline Cell real_or_null(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return std::monostate{};
}

}  // namespace detail

/// CSV: header row, comma separated, '.' decimal point, %.17g reals,
/// literal `null` for missing cells.
inline void write_csv(std::ostream& os, const SweepTable& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << t.columns[c];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << detail::format_cell(row[c]);
    os << '\n';
  }
}

/// JSON: an array of flat objects sharing the column keys.
inline void write_json(std::ostream& os, const SweepTable& t) {
  os << "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n " : "\n ") << "{";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      os << (c ? ", " : "") << '"' << t.columns[c] << "\": " << detail::format_cell(t.rows[r][c]);
    }
    os << "}";
  }
  os << (t.rows.empty() ? "]\n" : "\n]\n");
}

inline void write_table(std::ostream& os, const SweepTable& t, Format f) {
  if (f == Format::kCsv) {
    write_csv(os, t);
  } else {
    write_json(os, t);
  }
}

/// Inclusive grid min, min + step, ..., max (values formed as min + i step,
/// the last one snapped to max when within 1e-9 steps of it).
inline std::vector<double> log10_grid(double min, double max, double step) {
  if (!(step > 0.0) || !(min <= max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw DomainError("log10_grid: need min <= max and step > 0");
  }
  const double span = (max - min) / step;
  const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) grid.push_back(min + static_cast<double>(i) * step);
  if (std::fabs(grid.back() - max) <= 1e-9 * step) grid.back() = max;
  return grid;
}

/// Worker count from POISSON_MAXIMA_THREADS (0 or unset = hardware).
inline unsigned thread_count_from_env() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("POISSON_MAXIMA_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0) return hw;
  return v == 0 ? hw : static_cast<unsigned>(v);
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers and returns the
/// results in index order.
template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn, unsigned threads) {
  using Result = decltype(fn(std::size_t{}));
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) slots[i].emplace(fn(i));
  };
  const unsigned n = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct SweepOptions {
  std::optional<long> k_max;  // dist only; default is the scan window's upper end
  unsigned threads = 1;
  Accuracy accuracy{};
};

namespace detail {

struct GroupResult {
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;
};

inline std::string where(double lambda, double log10_n) {
  return "lambda=" + format_real(lambda) + " log10_n=" + format_real(log10_n) + ": ";
}

template <class RowFn>
SweepTable run_grid(std::vector<std::string> columns, const std::vector<double>& lambdas,
                    const std::vector<double>& log10_ns, unsigned threads, RowFn&& row_fn) {
  std::vector<std::pair<double, double>> points;
  for (double l : lambdas) {
    for (double n : log10_ns) points.emplace_back(l, n);
  }
  std::sort(points.begin(), points.end());
  auto groups = parallel_map(
      points.size(),
      [&](std::size_t i) { return row_fn(points[i].first, points[i].second); }, threads);
  SweepTable t{std::move(columns), {}, {}};
  for (auto& g : groups) {
    for (auto& r : g.rows) t.rows.push_back(std::move(r));
    for (auto& w : g.warnings) t.warnings.push_back(std::move(w));
  }
  return t;
}

template <class Fn>
auto try_or_warn(Fn&& fn, std::vector<std::string>& warnings, const std::string& prefix)
    -> std::optional<decltype(fn())> {
  try {
    return fn();
  } catch (const Error& e) {
    warnings.push_back(prefix + e.what());
    return std::nullopt;
  }
}

}  // namespace detail

/// pmf rows (lambda, log10_n, k, pmf, log_pmf) for k = 0..k_max.
inline SweepTable dist_table(const std::vector<double>& lambdas,
                             const std::vector<double>& log10_ns, const SweepOptions& opt = {}) {
  return detail::run_grid(
      {"lambda", "log10_n", "k", "pmf", "log_pmf"}, lambdas, log10_ns, opt.threads,
      [&](double lambda, double log10_n) {
        detail::GroupResult g;
        const auto inst = ProblemInstance::from_log10_n(lambda, log10_n);
        const std::string at = detail::where(lambda, log10_n);
        long k_max = 0;
        if (opt.k_max) {
          k_max = *opt.k_max;
        } else {
          const auto w = detail::try_or_warn(
              [&] { return with_widening(inst, [&](ScanWindow w) {
                      PmfScan(inst, w, opt.accuracy).require_accepted();
                      return w;
                    }); },
              g.warnings, at);
          k_max = w ? w->hi : default_window(inst).hi;
        }
        for (long k = 0; k <= k_max; ++k) {
          const auto lp = detail::try_or_warn(
              [&] { return max_pmf_log(inst, k, opt.accuracy); }, g.warnings,
              at + "k=" + std::to_string(k) + ": ");
          Cell pmf = std::monostate{};
          Cell log_pmf = std::monostate{};
          if (lp) {
            pmf = lp->prob();
            if (!lp->is_zero()) log_pmf = lp->value();
          }
          g.rows.push_back({lambda, log10_n, static_cast<std::int64_t>(k), pmf, log_pmf});
        }
        return g;
      });
}

/// Focussing rows (lambda, log10_n, i_best, p_two_point) from two_point_best.
inline SweepTable prob_table(const std::vector<double>& lambdas,
                             const std::vector<double>& log10_ns, const SweepOptions& opt = {}) {
  return detail::run_grid(
      {"lambda", "log10_n", "i_best", "p_two_point"}, lambdas, log10_ns, opt.threads,
      [&](double lambda, double log10_n) {
        detail::GroupResult g;
        const auto inst = ProblemInstance::from_log10_n(lambda, log10_n);
        const auto tp = detail::try_or_warn(
            [&] { return two_point_best_widening(inst, opt.accuracy); }, g.warnings,
            detail::where(lambda, log10_n));
        Cell i = std::monostate{};
        Cell p = std::monostate{};
        if (tp) {
          i = static_cast<std::int64_t>(tp->i);
          p = tp->p;
        }
        g.rows.push_back({lambda, log10_n, i, p});
        return g;
      });
}

namespace detail {

struct ModesRow {
  std::optional<TwoPoint> best;
  AsymptoticReport asym;
};

inline ModesRow modes_row(const ProblemInstance& inst, const Accuracy& acc,
                          std::vector<std::string>& warnings, const std::string& at) {
  ModesRow r;
  r.best = try_or_warn([&] { return two_point_best_widening(inst, acc); }, warnings, at);
  r.asym = asymptotic_report(inst, 0, acc);
  for (const auto& note : r.asym.notes) warnings.push_back(at + note);
  return r;
}

inline std::optional<double> error_vs(const std::optional<double>& v,
                                      const std::optional<TwoPoint>& best) {
  if (!v || !best) return std::nullopt;
  return *v - static_cast<double>(best->i);
}

}  // namespace detail

/// Modal-value rows: the exact I_n (leading integer of the most probable
/// adjacent pair) against every asymptotic locator; err_* = value - i_n.
inline SweepTable modes_table(const std::vector<double>& lambdas,
                              const std::vector<double>& log10_ns, const SweepOptions& opt = {}) {
  return detail::run_grid(
      {"lambda", "log10_n", "i_n", "x0", "x1", "kimber", "beta_n", "continuous_root", "err_x0",
       "err_x1"},
      lambdas, log10_ns, opt.threads, [&](double lambda, double log10_n) {
        detail::GroupResult g;
        const auto inst = ProblemInstance::from_log10_n(lambda, log10_n);
        const auto r = detail::modes_row(inst, opt.accuracy, g.warnings, detail::where(lambda, log10_n));
        Cell i = std::monostate{};
        if (r.best) i = static_cast<std::int64_t>(r.best->i);
        g.rows.push_back({lambda, log10_n, i, detail::real_or_null(r.asym.x0),
                          detail::real_or_null(r.asym.x1), detail::real_or_null(r.asym.kimber),
                          detail::real_or_null(r.asym.beta_n),
                          detail::real_or_null(r.asym.continuous_root),
                          detail::real_or_null(detail::error_vs(r.asym.x0, r.best)),
                          detail::real_or_null(detail::error_vs(r.asym.x1, r.best))});
        return g;
      });
}

/// Everything computable for one (lambda, n): the pmf-argmax summary
/// (mode_k, p_mode, p_two_point_mode, scan window, window mass), the
/// two-point summary shared with prob/modes (i_n, p_two_point) and the
/// asymptotic locators shared with modes.
inline SweepTable point_table(double lambda, double log10_n, const SweepOptions& opt = {}) {
  return detail::run_grid(
      {"lambda", "log10_n", "mode_k", "p_mode", "p_two_point_mode", "scan_lo", "scan_hi",
       "window_mass", "i_n", "p_two_point", "x0", "x1", "kimber", "beta_n", "continuous_root",
       "err_x0", "err_x1"},
      {lambda}, {log10_n}, 1, [&](double l, double n10) {
        detail::GroupResult g;
        const auto inst = ProblemInstance::from_log10_n(l, n10);
        const std::string at = detail::where(l, n10);
        const auto m = detail::try_or_warn([&] { return mode_widening(inst, opt.accuracy); },
                                           g.warnings, at);
        const auto r = detail::modes_row(inst, opt.accuracy, g.warnings, at);
        std::vector<Cell> row{l, n10};
        if (m) {
          row.insert(row.end(), {static_cast<std::int64_t>(m->i_n), m->p_mode, m->p_two_point,
                                 static_cast<std::int64_t>(m->scan_lo),
                                 static_cast<std::int64_t>(m->scan_hi), m->window_mass});
        } else {
          row.insert(row.end(), 6, std::monostate{});
        }
        if (r.best) {
          row.insert(row.end(), {static_cast<std::int64_t>(r.best->i), r.best->p});
        } else {
          row.insert(row.end(), 2, std::monostate{});
        }
        for (const auto& v : {r.asym.x0, r.asym.x1, r.asym.kimber, r.asym.beta_n,
                              r.asym.continuous_root, detail::error_vs(r.asym.x0, r.best),
                              detail::error_vs(r.asym.x1, r.best)}) {
          row.push_back(detail::real_or_null(v));
        }
        g.rows.push_back(std::move(row));
        return g;
      });
}

}  // namespace pmax

#endif  // POISSON_MAXIMA_SWEEP_HPP
