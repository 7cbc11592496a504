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

#include "nomadelay/csi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace nomadelay {

const char* to_string(CsiModel csi) { return csi == CsiModel::Perfect ? "perfect" : "imperfect"; }

const char* to_string(Coding coding) {
    return coding == Coding::InfiniteBlocklength ? "infinite" : "finite";
}

TrainingConfig ScenarioConfig::training() const {
    return {n_tr1, n_tr2, snr.rho_oma1, snr.rho_oma2};
}

double ScenarioConfig::sigma_z2(int user) const {
    if (csi == CsiModel::Perfect) return 0.0;
    return user == 1 ? csi::estimation_error_variance(snr.rho_oma1, n_tr1)
                     : csi::estimation_error_variance(snr.rho_oma2, n_tr2);
}

void ScenarioConfig::validate() const {
    snr.validate();
    if (n_tr1 < 0 || n_tr2 < 0) throw std::invalid_argument("training lengths must be >= 0");
    if (n_total <= 0) throw std::invalid_argument("slot length must be positive");
    if (n_tr1 + n_tr2 >= n_total)
        throw std::invalid_argument("training (" + std::to_string(n_tr1 + n_tr2) +
                                    " symbols) leaves no data symbols in a slot of " +
                                    std::to_string(n_total));
}

namespace csi {

double estimation_error_variance(double rho_tr, double n_tr) {
    return 1.0 / (1.0 + rho_tr * n_tr);
}

double icsi_stddev(double rho_bar, double rho_hat, double sigma_z2) {
    return std::sqrt(2.0 * rho_bar * rho_hat * sigma_z2);
}

EstimatedState make_state(double rho_bar1, double rho_bar2, double rho_hat1, double rho_hat2,
                          double sigma_z2_1, double sigma_z2_2) {
    return {rho_hat1, rho_hat2, icsi_stddev(rho_bar1, rho_hat1, sigma_z2_1),
            icsi_stddev(rho_bar2, rho_hat2, sigma_z2_2)};
}

EstimateDraw sample_exact(double rho_bar, double sigma_z2, Rng& rng) {
    std::normal_distribution<double> normal;
    const double s_hat = std::sqrt((1.0 - sigma_z2) / 2.0);
    const double s_err = std::sqrt(sigma_z2 / 2.0);
    const double hr = s_hat * normal(rng);
    const double hi = s_hat * normal(rng);
    const double zr = s_err * normal(rng);
    const double zi = s_err * normal(rng);
    return {rho_bar * (hr * hr + hi * hi), rho_bar * ((hr + zr) * (hr + zr) + (hi + zi) * (hi + zi))};
}

double sample_true_given_estimate(double rho_bar, double rho_hat, double sigma_z2, Rng& rng) {
    // The phase of h_hat does not matter: Z is circularly symmetric.
    std::normal_distribution<double> normal;
    const double a = std::sqrt(rho_hat / rho_bar);
    const double s_err = std::sqrt(sigma_z2 / 2.0);
    const double zr = s_err * normal(rng);
    const double zi = s_err * normal(rng);
    return rho_bar * ((a + zr) * (a + zr) + zi * zi);
}

}  // namespace csi

GridAxis quantize_exponential(double mean, int n) {
    if (n < 1) throw std::invalid_argument("quantization needs at least one point");
    GridAxis axis;
    axis.value.resize(static_cast<std::size_t>(n));
    axis.mass.assign(static_cast<std::size_t>(n), 1.0 / n);
    // Cell k spans survival probabilities [u_{k+1}, u_k] with u_k = 1 - k/n;
    // E[X | cell] = mean * (1 + (u_{k+1} ln u_{k+1} - u_k ln u_k) * n).
    auto u_log_u = [](double u) { return u > 0.0 ? u * std::log(u) : 0.0; };
    for (int k = 0; k < n; ++k) {
        const double u_hi = 1.0 - static_cast<double>(k) / n;
        const double u_lo = (k + 1 == n) ? 0.0 : 1.0 - static_cast<double>(k + 1) / n;
        axis.value[static_cast<std::size_t>(k)] =
            mean * (1.0 + (u_log_u(u_lo) - u_log_u(u_hi)) * n);
    }
    return axis;
}

SnrGrid::SnrGrid(GridAxis axis1, GridAxis axis2, double rho_bar1, double rho_bar2,
                 double sigma_z2_1, double sigma_z2_2)
    : axis1_(std::move(axis1)),
      axis2_(std::move(axis2)),
      rho_bar1_(rho_bar1),
      rho_bar2_(rho_bar2),
      sigma_z2_1_(sigma_z2_1),
      sigma_z2_2_(sigma_z2_2) {}

double SnrGrid::mass(std::size_t i) const {
    const std::size_t n2 = axis2_.size();
    return axis1_.mass[i / n2] * axis2_.mass[i % n2];
}

SnrPair SnrGrid::estimate(std::size_t i) const {
    const std::size_t n2 = axis2_.size();
    return {axis1_.value[i / n2], axis2_.value[i % n2]};
}

EstimatedState SnrGrid::state(std::size_t i) const {
    const SnrPair e = estimate(i);
    return csi::make_state(rho_bar1_, rho_bar2_, e.gamma1, e.gamma2, sigma_z2_1_, sigma_z2_2_);
}

namespace {
std::size_t nearest_on_axis(const std::vector<double>& v, double x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.begin()) return 0;
    if (it == v.end()) return v.size() - 1;
    const auto hi = static_cast<std::size_t>(it - v.begin());
    return (x - v[hi - 1] <= v[hi] - x) ? hi - 1 : hi;
}
}  // namespace

std::size_t SnrGrid::nearest(double rho_hat1, double rho_hat2) const {
    return index(nearest_on_axis(axis1_.value, rho_hat1), nearest_on_axis(axis2_.value, rho_hat2));
}

namespace csi {

SnrGrid build_grid(const ScenarioConfig& config, int points_per_axis) {
    if (points_per_axis < 2)
        throw std::invalid_argument("grid needs at least 2 points per axis, got " +
                                    std::to_string(points_per_axis));
    const double rb1 = config.snr.rho_bar1();
    const double rb2 = config.snr.rho_bar2();
    const double sz1 = config.sigma_z2(1);
    const double sz2 = config.sigma_z2(2);
    return SnrGrid(quantize_exponential(rb1 * (1.0 - sz1), points_per_axis),
                   quantize_exponential(rb2 * (1.0 - sz2), points_per_axis), rb1, rb2, sz1, sz2);
}

GridAxis build_oma_axis(const ScenarioConfig& config, int user, int points) {
    if (points < 2)
        throw std::invalid_argument("grid needs at least 2 points, got " + std::to_string(points));
    return quantize_exponential(config.snr.rho_oma(user) * (1.0 - config.sigma_z2(user)), points);
}

}  // namespace csi
}  // namespace nomadelay
