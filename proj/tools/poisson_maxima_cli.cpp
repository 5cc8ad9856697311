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

// poisson-maxima: tables for the maximum of n iid Poisson(lambda) variables.
//
//   poisson-maxima <dist|prob|modes|point> --lambda <f>
//       (--log10-n <f> | --log10-n-range <min:max:step> | --n <int>)
//       [--k-max <int>] [--format csv|json] [--out <path>]
//
// Exit codes: 0 success, 2 usage error, 1 numeric failure with no table.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "poisson_maxima/sweep.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kNumericError = 1;
constexpr std::uint64_t kMaxIntegerN = 1'000'000'000'000'000ULL;
constexpr double kMaxSweepLog10N = 40.0;

struct Args {
  std::vector<double> lambdas;
  std::vector<double> log10_n;
  std::string range;
  std::optional<std::uint64_t> n;
  std::optional<long> k_max;
  std::string format = "csv";
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Args& a, bool list_values) {
  auto* lambda = cmd->add_option("--lambda", a.lambdas, "Poisson mean(s), comma separated")
                     ->required()
                     ->check(CLI::PositiveNumber);
  auto* single = cmd->add_option("--log10-n", a.log10_n, "log10 of the number of variables")
                     ->check(CLI::NonNegativeNumber);
  auto* range = cmd->add_option("--log10-n-range", a.range, "log10 n grid as min:max:step");
  auto* n = cmd->add_option("--n", a.n, "integer number of variables (<= 1e15)");
  if (list_values) {
    lambda->delimiter(',');
    single->delimiter(',');
  } else {
    lambda->expected(1);
    single->expected(1);
    range->group("");  // hidden for point
  }
  single->excludes(range)->excludes(n);
  range->excludes(n);
  cmd->add_option("--format", a.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", a.out, "write the table here instead of stdout");
}

std::vector<double> parse_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--log10-n-range: cannot parse '" + item + "'");
    }
  }
  if (parts.size() != 3) throw UsageError("--log10-n-range expects min:max:step");
  if (!(parts[0] >= 0.0) || !(parts[0] <= parts[1]) || !(parts[2] > 0.0)) {
    throw UsageError("--log10-n-range needs 0 <= min <= max and step > 0");
  }
  return pmax::log10_grid(parts[0], parts[1], parts[2]);
}

std::vector<double> resolve_grid(const Args& a) {
  if (!a.range.empty()) return parse_range(a.range);
  if (a.n) {
    if (*a.n < 1 || *a.n > kMaxIntegerN) throw UsageError("--n must lie in [1, 1e15]");
    return {std::log10(static_cast<double>(*a.n))};
  }
  if (a.log10_n.empty()) throw UsageError("one of --log10-n, --log10-n-range, --n is required");
  return a.log10_n;
}

void require_sweep_range(const std::vector<double>& grid, const char* cmd) {
  for (double v : grid) {
    if (v > kMaxSweepLog10N) {
      throw UsageError(std::string(cmd) + ": log10 n must not exceed 40");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution, focussing probability and modal value of the maximum of n iid "
               "Poisson variables"};
  app.require_subcommand(1);
  Args args;
  auto* dist = app.add_subcommand("dist", "pmf of the maximum for k = 0..k_max");
  add_common(dist, args, true);
  dist->add_option("--k-max", args.k_max, "largest k (default: scan window upper end)")
      ->check(CLI::NonNegativeNumber);
  auto* prob = app.add_subcommand("prob", "most probable two-point mass P_n");
  add_common(prob, args, true);
  auto* modes = app.add_subcommand("modes", "exact I_n against x0, x1, Kimber, beta_n");
  add_common(modes, args, true);
  auto* point = app.add_subcommand("point", "every quantity for a single (lambda, n)");
  add_common(point, args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  pmax::SweepTable table;
  try {
    const std::vector<double> grid = resolve_grid(args);
    pmax::SweepOptions opt;
    opt.threads = pmax::thread_count_from_env();
    opt.k_max = args.k_max;
    if (dist->parsed()) {
      table = pmax::dist_table(args.lambdas, grid, opt);
    } else if (prob->parsed()) {
      require_sweep_range(grid, "prob");
      table = pmax::prob_table(args.lambdas, grid, opt);
    } else if (modes->parsed()) {
      require_sweep_range(grid, "modes");
      table = pmax::modes_table(args.lambdas, grid, opt);
    } else {
      if (grid.size() != 1 || args.lambdas.size() != 1) {
        throw UsageError("point takes exactly one lambda and one n");
      }
      table = pmax::point_table(args.lambdas.front(), grid.front(), opt);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const pmax::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const pmax::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  }

  for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
  if (table.rows.empty()) {
    std::cerr << "numeric failure: no rows produced\n";
    return kNumericError;
  }

  const auto format = args.format == "json" ? pmax::Format::kJson : pmax::Format::kCsv;
  if (args.out.empty()) {
    pmax::write_table(std::cout, table, format);
    return std::cout.good() ? 0 : kNumericError;
  }
  std::ofstream out(args.out, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << args.out << "\n";
    return kUsageError;
  }
  pmax::write_table(out, table, format);
  return out.good() ? 0 : kNumericError;
}
