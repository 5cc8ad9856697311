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

#ifndef POISSON_MAXIMA_ERROR_HPP
#define POISSON_MAXIMA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pmax {

// Root of every error the library throws. Callers that only need to know
// "this quantity is unavailable" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A series, continued fraction or iteration hit its cap.
class IterationLimitError : public Error {
 public:
  using Error::Error;
};

// The pmf mass inside a scan window fell short; widen and retry.
class WindowError : public Error {
 public:
  WindowError(const std::string& what, int lo, int hi, double mass)
      : Error(what), lo_(lo), hi_(hi), mass_(mass) {}
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  double mass() const noexcept { return mass_; }

 private:
  int lo_;
  int hi_;
  double mass_;
};

// A formula with a vanishing denominator (x1 at small n).
class SingularError : public Error {
 public:
  using Error::Error;
};

// Input for which a formula is undefined, e.g. x0 at n = 1.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmax

#endif  // POISSON_MAXIMA_ERROR_HPP
