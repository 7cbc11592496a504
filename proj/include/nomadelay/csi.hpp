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

#include <cstddef>
#include <vector>

#include "nomadelay/channel.hpp"

namespace nomadelay {

enum class CsiModel { Perfect, Imperfect };
enum class Coding { InfiniteBlocklength, FiniteBlocklength };

const char* to_string(CsiModel csi);
const char* to_string(Coding coding);

/// Training phase: each user sends n_tr_k pilots orthogonally, i.e. at its
/// full-power (OMA) SNR rho_tr_k.
struct TrainingConfig {
    int n_tr1 = 25;
    int n_tr2 = 25;
    double rho_tr1 = 0.0;
    double rho_tr2 = 0.0;
};

/// Physical-layer description of one experiment: SNRs, slot structure, and the
/// CSI/coding fidelity the error model should account for.
struct ScenarioConfig {
    AvgSnrConfig snr;
    int n_total = 250;
    int n_tr1 = 25;
    int n_tr2 = 25;
    CsiModel csi = CsiModel::Imperfect;
    Coding coding = Coding::InfiniteBlocklength;

    /// Data symbols left in a slot after both training sequences.
    int n_data() const { return n_total - n_tr1 - n_tr2; }
    TrainingConfig training() const;
    /// MMSE error variance of user k; zero under perfect CSI.
    double sigma_z2(int user) const;
    void validate() const;
};

/// Estimated SNRs and the standard deviations of the Gaussian approximation of
/// the true SNR around them.
struct EstimatedState {
    double rho_hat1 = 0.0;
    double rho_hat2 = 0.0;
    double sigma_ic1 = 0.0;
    double sigma_ic2 = 0.0;

    double rho_hat(int user) const { return user == 1 ? rho_hat1 : rho_hat2; }
    double sigma_ic(int user) const { return user == 1 ? sigma_ic1 : sigma_ic2; }
};

namespace csi {

/// MMSE error variance 1 / (1 + rho_tr * n_tr).
double estimation_error_variance(double rho_tr, double n_tr);

/// Standard deviation of the true SNR given the estimate rho_hat.
double icsi_stddev(double rho_bar, double rho_hat, double sigma_z2);

/// Builds the state for an estimate pair; sigma_z2_k = 0 gives perfect CSI.
EstimatedState make_state(double rho_bar1, double rho_bar2, double rho_hat1, double rho_hat2,
                          double sigma_z2_1, double sigma_z2_2);

struct EstimateDraw {
    double rho_hat = 0.0;
    double gamma = 0.0;
};

/// Exact estimation model: h_hat ~ CN(0, 1 - sigma_z2) and error Z ~ CN(0,
/// sigma_z2), independent. Returns rho_bar|h_hat|^2 and rho_bar|h_hat + Z|^2.
EstimateDraw sample_exact(double rho_bar, double sigma_z2, Rng& rng);

/// True SNR drawn from the exact model conditioned on the estimate rho_hat.
double sample_true_given_estimate(double rho_bar, double rho_hat, double sigma_z2, Rng& rng);

}  // namespace csi

/// One quantized axis: point values (linear SNR) and their probability masses.
struct GridAxis {
    std::vector<double> value;
    std::vector<double> mass;

    std::size_t size() const { return value.size(); }
};

/// Equiprobable quantization of an exponential law: n cells of mass 1/n, each
/// represented by its conditional mean (the open tail cell included).
GridAxis quantize_exponential(double mean, int n);

/// Product grid of independent estimated-SNR pairs. Point i maps to
/// (axis1[i / n2], axis2[i % n2]) with mass equal to the product.
class SnrGrid {
  public:
    SnrGrid() = default;
    SnrGrid(GridAxis axis1, GridAxis axis2, double rho_bar1, double rho_bar2, double sigma_z2_1,
            double sigma_z2_2);

    std::size_t size() const { return axis1_.size() * axis2_.size(); }
    std::size_t index(std::size_t i1, std::size_t i2) const { return i1 * axis2_.size() + i2; }

    double mass(std::size_t i) const;
    SnrPair estimate(std::size_t i) const;
    EstimatedState state(std::size_t i) const;

    const GridAxis& axis1() const { return axis1_; }
    const GridAxis& axis2() const { return axis2_; }
    double rho_bar(int user) const { return user == 1 ? rho_bar1_ : rho_bar2_; }
    double sigma_z2(int user) const { return user == 1 ? sigma_z2_1_ : sigma_z2_2_; }

    /// Index of the grid point nearest to (rho_hat1, rho_hat2), per axis.
    std::size_t nearest(double rho_hat1, double rho_hat2) const;

  private:
    GridAxis axis1_;
    GridAxis axis2_;
    double rho_bar1_ = 0.0;
    double rho_bar2_ = 0.0;
    double sigma_z2_1_ = 0.0;
    double sigma_z2_2_ = 0.0;
};

namespace csi {

/// Quantized joint law of the NOMA estimates: rho_hat_k is exponential with
/// mean rho_bar_k (1 - sigma_z2_k), the two users independent.
SnrGrid build_grid(const ScenarioConfig& config, int points_per_axis);

/// Quantized estimate law of user k transmitting alone at its full (OMA)
/// power; the training overhead is the same as under NOMA.
GridAxis build_oma_axis(const ScenarioConfig& config, int user, int points);

}  // namespace csi
}  // namespace nomadelay
