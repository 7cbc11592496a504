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

#include "nomadelay/snc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nomadelay {

void ArrivalSpec::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("arrival rate must be finite and >= 0, got " +
                                    std::to_string(alpha));
}

double ServiceSpec::max_bits() const {
    double m = 0.0;
    for (const auto& a : atoms) m = std::max(m, a.bits);
    return m;
}

void ServiceSpec::validate() const {
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!(a.mass >= 0.0) || !(a.bits >= 0.0) || !(a.eps >= 0.0 && a.eps <= 1.0))
            throw std::invalid_argument("service atom out of range");
        total += a.mass;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("service masses sum to " + std::to_string(total));
}

namespace snc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

// Kernel as a function of log s; +inf outside the stability region.
template <class F>
struct LogSearch {
    F f;
    double best_x = 0.0;
    double best_v = kInf;

    double eval(double x) {
        const double v = f(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
        return v;
    }

    // Coarse sweep, then golden section inside the bracket of the best point.
    void run(double lo, double hi, int points, int iterations) {
        std::vector<double> xs(static_cast<std::size_t>(points));
        std::vector<double> vs(xs.size());
        for (int k = 0; k < points; ++k) {
            xs[k] = lo + (hi - lo) * k / (points - 1);
            vs[k] = eval(xs[k]);
        }
        if (!std::isfinite(best_v)) return;
        const auto k = static_cast<int>(std::min_element(vs.begin(), vs.end()) - vs.begin());
        double a = xs[static_cast<std::size_t>(std::max(k - 1, 0))];
        double b = xs[static_cast<std::size_t>(std::min(k + 1, points - 1))];
        double c = b - kGolden * (b - a);
        double d = a + kGolden * (b - a);
        double fc = eval(c);
        double fd = eval(d);
        for (int it = 0; it < iterations; ++it) {
            if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - kGolden * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + kGolden * (b - a);
                fd = eval(d);
            }
        }
    }
};

template <class F>
LogSearch<F> make_search(F f) {
    return LogSearch<F>{f};
}
}  // namespace

double mellin_arrival(const ArrivalSpec& arrival, double s) { return std::exp(s * arrival.alpha); }

double mellin_service(const ServiceSpec& service, double s) {
    double m = 0.0;
    for (const auto& a : service.atoms) m += a.mass * (a.eps + (1.0 - a.eps) * std::exp(-s * a.bits));
    return std::min(m, 1.0);
}

bool stability(double ma, double ms) { return ma * ms < 1.0; }

double kernel(double ma, double ms, int w) {
    if (!stability(ma, ms))
        throw Unstable("stability condition violated: M_A M_S = " + std::to_string(ma * ms));
    return std::pow(ms, w) / (1.0 - ma * ms);
}

DelayBound delay_bound(const ArrivalSpec& arrival, const ServiceSpec& service, int w,
                       const SearchOptions& opts) {
    if (w < 0) throw std::invalid_argument("deadline must be >= 0");
    auto search = make_search([&](double x) {
        const double s = std::exp(x);
        const double ma = mellin_arrival(arrival, s);
        const double ms = mellin_service(service, s);
        if (!stability(ma, ms)) return kInf;
        return kernel(ma, ms, w);
    });
    search.run(std::log(opts.s_min), std::log(opts.s_max), opts.coarse_points,
               opts.golden_iterations);
    if (!std::isfinite(search.best_v))
        throw Unstable("unstable for all s in [" + std::to_string(opts.s_min) + ", " +
                       std::to_string(opts.s_max) + "]");
    return {w, search.best_v, std::exp(search.best_x), true};
}

std::vector<DelayBound> delay_bounds(const ArrivalSpec& arrival, const ServiceSpec& service,
                                     int w_max, const SearchOptions& opts) {
    std::vector<DelayBound> out;
    for (int w = 1; w <= w_max; ++w) {
        try {
            out.push_back(delay_bound(arrival, service, w, opts));
        } catch (const Unstable&) {
            out.push_back({w, 1.0, 0.0, false});
        }
    }
    return out;
}

double max_arrival_at(double ms, double s, int w, double target_pv) {
    const double slack = 1.0 - std::pow(ms, w) / target_pv;
    if (!(slack > 0.0) || !(ms > 0.0)) return -kInf;
    // Underflowed ms would turn the ratio into inf.
    const double a = (std::log(slack) - std::log(ms)) / s;
    return std::isfinite(a) ? a : -kInf;
}

double max_arrival(const ServiceSpec& service, int w, double target_pv,
                   const SearchOptions& opts) {
    if (!(target_pv > 0.0 && target_pv < 1.0))
        throw std::invalid_argument("target violation probability must lie in (0, 1)");
    auto search = make_search([&](double x) {
        const double s = std::exp(x);
        return -max_arrival_at(mellin_service(service, s), s, w, target_pv);
    });
    search.run(std::log(opts.s_min), std::log(opts.s_max), opts.coarse_points,
               opts.golden_iterations);
    const double alpha = -search.best_v;
    if (!(alpha > 0.0)) return 0.0;
    return std::floor(alpha * 10.0) / 10.0;
}

double max_service_mellin(double ma, int w, double target_pv) {
    if (!(ma >= 1.0)) throw std::invalid_argument("arrival Mellin value must be >= 1");
    double lo = 0.0;
    double hi = 1.0 / ma;
    auto k = [&](double m) { return std::pow(m, w) / (1.0 - ma * m); };
    if (k(0.0) > target_pv) return 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (k(mid) <= target_pv ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace snc
}  // namespace nomadelay
