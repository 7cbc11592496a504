// SPDX-License-Identifier: Apache-2.0
//
// nomadelay: delay-violation analysis for the two-user uplink NOMA channel
// Copyright (C) 2026 The nomadelay authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace nomadelay {

using Rng = std::mt19937_64;

/// log2(e), the nats-to-bits factor that appears in every dispersion term.
inline constexpr double kLog2e = 1.4426950408889634;

inline double from_db(double db) { return std::pow(10.0, db / 10.0); }
inline double to_db(double linear) { return 10.0 * std::log10(linear); }

/// Raised when an optimization problem has no feasible point (e.g. a delay
/// target that no rate policy can meet).
class Infeasible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when the SNC stability condition fails where it is required.
class Unstable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Deterministic per-stream generator. Streams with different indices are
/// statistically independent for all practical purposes; results depend only
/// on (seed, stream), never on the thread that executes the stream.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Runs body(chunk) for chunk = 0..n_chunks-1 on up to `threads` workers.
/// threads == 0 means hardware concurrency. Exceptions propagate.
void parallel_chunks(std::size_t n_chunks, unsigned threads,
                     const std::function<void(std::size_t)>& body);

/// Two-sided 95% Wilson score interval for a binomial proportion.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

}  // namespace nomadelay
