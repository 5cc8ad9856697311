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

#include "poisson_maxima/maxdist.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "poisson_maxima/oracle.hpp"

namespace pmax {
namespace {

using oracle::BigReal;

double to_double(const BigReal& v) { return v.convert_to<double>(); }
double log_of(const BigReal& v) { return static_cast<BigReal>(log(v)).convert_to<double>(); }

// 10^6 ln Q(11, 1), 60-digit mpmath.
constexpr double kMaxCdfLambda1N1e6K10 = -0.010047766426169741963;

struct OracleLambda {
  long num;
  long den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
constexpr OracleLambda kLambdas[] = {{1, 2}, {1, 1}, {2, 1}, {5, 1}};

TEST(ProblemInstance, Validation) {
  EXPECT_THROW(ProblemInstance::from_ln_n(0.0, 1.0), DomainError);
  EXPECT_THROW(ProblemInstance::from_ln_n(1.0, -0.1), DomainError);
  EXPECT_THROW(ProblemInstance::from_n(1.0, 0), DomainError);
  EXPECT_NEAR(ProblemInstance::from_log10_n(1.0, 40.0).ln_n(), 92.103403719761827, 1e-13);
  EXPECT_DOUBLE_EQ(ProblemInstance::from_n(2.0, 1).ln_n(), 0.0);
}

TEST(LogProb, RejectsPositiveLogs) {
  EXPECT_THROW(LogProb(0.1), DomainError);
  EXPECT_NO_THROW(LogProb(1e-10));
  EXPECT_TRUE(LogProb::zero().is_zero());
  EXPECT_EQ(LogProb::zero().prob(), 0.0);
}

TEST(MaxCdf, Examples) {
  EXPECT_NEAR(max_cdf_log(ProblemInstance::from_ln_n(2.0, std::log(3.0)), 0).value(), -6.0, 1e-14);
  for (double lambda : {0.5, 3.0}) {
    const auto one = ProblemInstance::from_n(lambda, 1);
    for (long k = 0; k < 30; ++k) {
      EXPECT_DOUBLE_EQ(max_cdf_log(one, k).value(), poisson_cdf_log(k, lambda));
    }
  }
  const auto inst = ProblemInstance::from_n(1.0, 1'000'000);
  EXPECT_NEAR(max_cdf_log(inst, 10).value(), kMaxCdfLambda1N1e6K10, 1e-12 * 0.01);
  EXPECT_TRUE(max_cdf_log(inst, -1).is_zero());
}

TEST(MaxCdf, SurvivesAstronomicalN) {
  // ln Q(121, 1) ~ -1e-200: the product with n = 1e40 is still resolved
  const auto inst = ProblemInstance::from_log10_n(1.0, 40.0);
  const double v = max_cdf_log(inst, 120).value();
  EXPECT_LT(v, 0.0);
  EXPECT_NEAR(std::log(-v), inst.ln_n() + poisson_sf_log(120, 1.0), 1e-12 * 400);
}

TEST(MaxPmf, Examples) {
  EXPECT_NEAR(max_pmf_log(ProblemInstance::from_n(1.0, 2), 1).value(), std::log(3.0) - 2.0, 1e-13);
  EXPECT_THROW(max_pmf_log(ProblemInstance::from_n(1.0, 2), -1), DomainError);
}

TEST(MaxPmf, SingleVariableIsPoisson) {
  for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
    const auto one = ProblemInstance::from_n(lambda, 1);
    for (long k = 0; k <= 100; ++k) {
      const double expected = log_poisson_pmf(k, lambda);
      EXPECT_NEAR(max_pmf_log(one, k).value(), expected, 1e-11 * std::max(1.0, std::fabs(expected)))
          << lambda << " " << k;
    }
  }
}

TEST(MaxPmf, RowMatchesOracle) {
  const auto inst = ProblemInstance::from_n(5.0, 100'000'000);
  const auto row = oracle::max_pmf_row(60, oracle::rational(5), 100'000'000);
  for (long k = 0; k <= 60; ++k) {
    const double expected = log_of(row[k]);
    EXPECT_NEAR(max_pmf_log(inst, k).value(), expected, 1e-10 * std::max(1.0, std::fabs(expected)))
        << k;
  }
}

TEST(Mode, Examples) {
  EXPECT_EQ(mode(ProblemInstance::from_n(0.5, 1)).i_n, 0);
  const auto tie = mode(ProblemInstance::from_n(1.0, 1));
  EXPECT_EQ(tie.i_n, 0);
  EXPECT_NEAR(tie.p_mode, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(tie.p_two_point, 2.0 * std::exp(-1.0), 1e-14);

  const auto m = mode(ProblemInstance::from_n(1.0, 10'000));
  const auto o = oracle::mode(oracle::rational(1), 10'000);
  EXPECT_EQ(m.i_n, o.i_n);
  EXPECT_NEAR(m.p_two_point, to_double(o.p_two_point), 1e-10 * to_double(o.p_two_point));
  EXPECT_NEAR(m.p_mode, to_double(o.p_mode), 1e-10 * to_double(o.p_mode));
}

TEST(Mode, ReportInvariants) {
  const auto r = mode(ProblemInstance::from_log10_n(2.0, 17.3));
  EXPECT_LE(r.scan_lo, r.i_n);
  EXPECT_LE(r.i_n, r.scan_hi);
  EXPECT_LE(r.p_mode, r.p_two_point);
  EXPECT_LE(r.p_two_point, 1.0);
  EXPECT_GE(r.window_mass, 1.0 - 1e-9);
  ASSERT_EQ(r.pmf_slice.size(), static_cast<std::size_t>(r.scan_hi - r.scan_lo + 1));
  EXPECT_EQ(r.pmf_slice.front().k, r.scan_lo);
}

TEST(Mode, NarrowWindowIsRejectedAndWideningRecovers) {
  const auto inst = ProblemInstance::from_log10_n(1.0, 10.0);
  const auto centre = mode(inst).i_n;
  try {
    mode(inst, ScanWindow{centre, centre + 1});
    FAIL() << "expected WindowError";
  } catch (const WindowError& e) {
    EXPECT_LT(e.mass(), 1.0 - 1e-9);
    EXPECT_EQ(e.lo(), centre);
  }
  EXPECT_THROW(two_point_best(inst, ScanWindow{0, 2}), WindowError);
  const auto w = widened(ScanWindow{10, 13});
  EXPECT_EQ(w.lo, 8);
  EXPECT_EQ(w.hi, 15);
  EXPECT_EQ(mode_widening(inst).i_n, centre);
}

TEST(TwoPointBest, Examples) {
  const auto a = two_point_best(ProblemInstance::from_n(1.0, 1));
  EXPECT_EQ(a.i, 0);
  EXPECT_NEAR(a.p, 2.0 * std::exp(-1.0), 1e-14);
  const auto b = two_point_best(ProblemInstance::from_n(2.0, 1));
  EXPECT_EQ(b.i, 1);
  EXPECT_NEAR(b.p, 4.0 * std::exp(-2.0), 1e-14);

  const auto c = two_point_best(ProblemInstance::from_n(5.0, 10'000'000'000ULL));
  const auto o = oracle::mode(oracle::rational(5), 10'000'000'000ULL);
  EXPECT_EQ(c.i, o.i_best);
  EXPECT_NEAR(c.p, to_double(o.p_best), 1e-10 * to_double(o.p_best));
}

TEST(Invariants, NormalizationCdfConsistencyAndMonotonicity) {
  for (double lambda : {0.3, 0.5, 1.0, 2.0, 5.0, 8.0}) {
    for (double log10_n = 0.0; log10_n <= 40.0; log10_n += 2.5) {
      const auto inst = ProblemInstance::from_log10_n(lambda, log10_n);
      const auto r = mode(inst);
      double total = 0.0;
      double prev_cdf = -INFINITY;
      for (const auto& p : r.pmf_slice) {
        total += p.log_p.prob();
        const LogProb cdf = max_cdf_log(inst, p.k);
        const LogProb below = max_cdf_log(inst, p.k - 1);
        EXPECT_GE(cdf.value(), prev_cdf);
        prev_cdf = cdf.value();
        if (below.value() > std::log(1e-300)) {
          EXPECT_NEAR(cdf.prob() - below.prob(), p.log_p.prob(), 1e-12);
        }
      }
      EXPECT_NEAR(total, 1.0, 1e-9) << lambda << " " << log10_n;
    }
  }
}

TEST(Invariants, OracleEquivalenceOnDecadeGrid) {
  for (const auto& l : kLambdas) {
    std::uint64_t n = 1;
    for (int e = 0; e <= 12; ++e, n *= 10) {
      const auto o = oracle::mode(oracle::rational(l.num, l.den), n);
      const auto m = mode(ProblemInstance::from_n(l.value(), n));
      EXPECT_EQ(m.i_n, o.i_n) << l.value() << " 1e" << e;
      EXPECT_NEAR(m.p_two_point, to_double(o.p_two_point), 1e-10 * to_double(o.p_two_point));
    }
  }
}

TEST(Invariants, PmfArgmaxAndTwoPointArgmaxDifferByAtMostOne) {
  for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
    for (double log10_n = 0.0; log10_n <= 40.0; log10_n += 0.25) {
      const auto inst = ProblemInstance::from_log10_n(lambda, log10_n);
      EXPECT_LE(std::labs(mode(inst).i_n - two_point_best(inst).i), 1) << lambda << " " << log10_n;
    }
  }
}

TEST(Invariants, FocussingTrend) {
  for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
    double low = 1.0;
    double high = 1.0;
    for (double log10_n = 0.0; log10_n <= 40.0 + 1e-9; log10_n += 0.1) {
      const double p = two_point_best(ProblemInstance::from_log10_n(lambda, log10_n)).p;
      if (log10_n <= 2.0 + 1e-9) low = std::min(low, p);
      if (log10_n >= 30.0 - 1e-9) high = std::min(high, p);
    }
    EXPECT_GT(high, low) << lambda;
  }
}

TEST(Invariants, RandomInstancesNormalize) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> lam(0.3, 8.0);
  std::uniform_real_distribution<double> dec(0.0, 40.0);
  for (int i = 0; i < 200; ++i) {
    const auto inst = ProblemInstance::from_log10_n(lam(rng), dec(rng));
    const auto r = mode(inst);
    double total = 0.0;
    for (const auto& p : r.pmf_slice) total += p.log_p.prob();
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace pmax
