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

#ifndef POISSON_MAXIMA_POISSON_MAXIMA_HPP
#define POISSON_MAXIMA_POISSON_MAXIMA_HPP

#include "poisson_maxima/asymptotics.hpp"
#include "poisson_maxima/error.hpp"
#include "poisson_maxima/instance.hpp"
#include "poisson_maxima/maxdist.hpp"
#include "poisson_maxima/roots.hpp"
#include "poisson_maxima/specfun.hpp"
#include "poisson_maxima/sweep.hpp"

#endif  // POISSON_MAXIMA_POISSON_MAXIMA_HPP
