// SPDX-License-Identifier: Apache-2.0
//
// aerocf - uplink resource management for cell-free aerial networks
// Copyright (C) 2026 The aerocf Authors
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

#include "aerocf/association_matrix.hpp"
#include "aerocf/grid.hpp"
#include "aerocf/pilots.hpp"
#include "aerocf/propagation.hpp"

#include <Eigen/Dense>

#include <vector>

namespace aerocf {

using PowerVector = std::vector<double>;

/// L-MMSE combiners of one realization, same layout as the channel table.
using CombinerSet = ChannelTable;

/// v_kl = (sum_i p_i (hhat_il hhat_il^H + C_err_il) + sigma2 I)^{-1} hhat_kl.
/// The Gram matrix is factored once per O-RU.
CombinerSet lmmse_combiner(const ChannelTable &h_hat, const Grid<LinkEstimate> &links, const PowerVector &powers,
                           double sigma2);

/// alpha_kl = A_kl sqrt(beta_kl)
Grid<double> cpu_weights(const AssociationMatrix &assoc, const Grid<double> &beta);

/// Sample moments of the local combiner outputs for every (k, l, i), taken over
/// the channel ensemble with combiners built at `combiner_powers`. They do not
/// depend on the association, which only gates them into SINR coefficients.
class LinkExpectations
{
public:
    LinkExpectations() = default;
    LinkExpectations(int num_uavs, int num_orus);

    int num_uavs() const noexcept { return k_; }
    int num_orus() const noexcept { return l_; }

    /// E[v_kl^H h_kl]
    cplx &mean_gain(int k, int l) { return mean_gain_[idx(k, l)]; }
    cplx mean_gain(int k, int l) const { return mean_gain_[idx(k, l)]; }
    /// E[|v_kl^H h_il|^2]
    double &second_moment(int k, int l, int i) { return second_[idx(k, l) * k_ + i]; }
    double second_moment(int k, int l, int i) const { return second_[idx(k, l) * k_ + i]; }
    /// E[||v_kl||^2]
    double &combiner_norm(int k, int l) { return norm_[idx(k, l)]; }
    double combiner_norm(int k, int l) const { return norm_[idx(k, l)]; }

    PowerVector combiner_powers;
    int samples = 0;

private:
    std::size_t idx(int k, int l) const { return static_cast<std::size_t>(k) * l_ + l; }

    int k_ = 0;
    int l_ = 0;
    std::vector<cplx> mean_gain_;
    std::vector<double> second_;
    std::vector<double> norm_;
};

LinkExpectations compute_link_expectations(const ChannelEnsemble &channels, const EstimationResult &estimates,
                                           const PowerVector &combiner_powers, double sigma2);

/// Reduced SINR model Gamma_k = p_k a_k / (p_k d_k + sum_{i!=k} b_ki p_i + c_k).
struct SinrCoefficients
{
    Eigen::VectorXd a; // desired signal per unit power
    Eigen::VectorXd d; // beamforming-gain uncertainty per unit power
    Eigen::MatrixXd b; // b(k, i): interference from UAV i onto k, zero diagonal
    Eigen::VectorXd c; // effective noise
    int variance_clamps = 0;
    PowerVector combiner_powers; // powers the underlying combiners were built with

    int size() const noexcept { return static_cast<int>(a.size()); }
    bool served(int k) const { return a(k) > 0.0; }
};

SinrCoefficients estimate_sinr_coefficients(const LinkExpectations &ex, const AssociationMatrix &assoc,
                                            const Grid<double> &weights, double sigma2);

/// Builds the weights from beta and gates by the association in one call.
SinrCoefficients sinr_coefficients(const LinkExpectations &ex, const AssociationMatrix &assoc,
                                   const Grid<double> &beta, double sigma2);

/// Per-UAV SINR; unserved UAVs (a_k = 0) get 0.
std::vector<double> sinr(const SinrCoefficients &coef, const PowerVector &p);

struct SeVector
{
    std::vector<double> se;
    std::vector<double> sinr;
};

SeVector spectral_efficiency(const std::vector<double> &sinr, int tau_p, int tau_c);

} // namespace aerocf
