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

// Writes the extended-precision golden tables used by the test suite.
//
//   oracle-gen <out_dir>
//
// dist_oracle.csv   lambda,log10_n,k,pmf,log_pmf   (same schema as `dist`)
// modes_oracle.csv  lambda,n,i_n,p_mode,p_two_point,i_best,p_best
//
// for lambda in {1/2, 1, 2, 5}, n = 10^0, 10^2, ..., 10^12 (dist) and
// n = 10^0 .. 10^12 (modes).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "poisson_maxima/oracle.hpp"

namespace {

using pmax::oracle::BigReal;

struct Lambda {
  long num;
  long den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

constexpr Lambda kLambdas[] = {{1, 2}, {1, 1}, {2, 1}, {5, 1}};
constexpr long kDistKMax = 40;

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string big(const BigReal& v) {
  if (v == 0) return "0";
  return real(v.convert_to<double>());
}

std::string big_log(const BigReal& v) {
  if (v <= 0) return "null";
  return real(static_cast<BigReal>(log(v)).convert_to<double>());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: oracle-gen <out_dir>\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);

  std::ofstream dist(dir / "dist_oracle.csv", std::ios::binary);
  dist << "lambda,log10_n,k,pmf,log_pmf\n";
  for (const Lambda& l : kLambdas) {
    const BigReal lambda = pmax::oracle::rational(l.num, l.den);
    std::uint64_t n = 1;
    for (int e = 0; e <= 12; e += 2, n *= 100) {
      const auto row = pmax::oracle::max_pmf_row(kDistKMax, lambda, n);
      for (long k = 0; k <= kDistKMax; ++k) {
        dist << real(l.value()) << ',' << e << ',' << k << ',' << big(row[k]) << ','
             << big_log(row[k]) << '\n';
      }
    }
  }

  std::ofstream modes(dir / "modes_oracle.csv", std::ios::binary);
  modes << "lambda,n,i_n,p_mode,p_two_point,i_best,p_best\n";
  for (const Lambda& l : kLambdas) {
    const BigReal lambda = pmax::oracle::rational(l.num, l.den);
    std::uint64_t n = 1;
    for (int e = 0; e <= 12; ++e, n *= 10) {
      const auto m = pmax::oracle::mode(lambda, n);
      modes << real(l.value()) << ',' << n << ',' << m.i_n << ',' << big(m.p_mode) << ','
            << big(m.p_two_point) << ',' << m.i_best << ',' << big(m.p_best) << '\n';
    }
  }
  return dist.good() && modes.good() ? 0 : 1;
}
