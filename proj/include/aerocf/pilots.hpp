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

#include "aerocf/grid.hpp"
#include "aerocf/propagation.hpp"
#include "aerocf/scenario.hpp"

#include <Eigen/Dense>

#include <vector>

namespace aerocf {

struct PilotAssignment
{
    int tau_p = 0;
    std::vector<int> pilot_of;               // per UAV, in [0, tau_p)
    std::vector<std::vector<int>> share_sets; // per UAV, sorted, includes the UAV itself
    std::vector<double> pilot_power;          // W per UAV

    int num_uavs() const noexcept { return static_cast<int>(pilot_of.size()); }
};

/// Builds share sets from an explicit pilot index list.
PilotAssignment make_pilot_assignment(std::vector<int> pilot_of, int tau_p, double pilot_power_w);

PilotAssignment assign_pilots_random(int num_uavs, int tau_p, double pilot_power_w, RandomStream &rng);

/// Second-order description of the MMSE estimator for one link.
struct LinkEstimate
{
    Eigen::MatrixXcd psi;   // covariance of the despread pilot observation
    Eigen::MatrixXcd c_hat; // estimate covariance
    Eigen::MatrixXcd c_err; // error covariance, c_hat + c_err = C
    Eigen::MatrixXcd gain;  // sqrt(p_k) tau_p C Psi^{-1}
};

struct EstimationResult
{
    Grid<LinkEstimate> links;
    ChannelEnsemble h_hat; // one table per channel realization
};

/// tau_p^2 sum_{i in P_k} p_i C_il + tau_p sigma2 I
Eigen::MatrixXcd psi_matrix(int k, int l, const PilotAssignment &pilots, const Grid<ChannelStats> &stats,
                            double sigma2);

struct ErrorCovariance
{
    Eigen::MatrixXcd c_err;
    Eigen::MatrixXcd c_hat;
};

/// C_err = C - tau_p^2 p_k C Psi^{-1} C and C_hat = C - C_err.
ErrorCovariance error_covariance(int k, int l, const PilotAssignment &pilots, const Grid<ChannelStats> &stats,
                                 double sigma2);

LinkEstimate link_estimate(int k, int l, const PilotAssignment &pilots, const Grid<ChannelStats> &stats,
                           double sigma2);

Grid<LinkEstimate> estimation_statistics(const PilotAssignment &pilots, const Grid<ChannelStats> &stats,
                                         double sigma2);

/// Simulates the pilot phase for every realization (noise is shared by all
/// UAVs on the same pilot at the same O-RU) and applies the MMSE estimator.
EstimationResult simulate_pilot_and_estimate(const ChannelEnsemble &realizations, const PilotAssignment &pilots,
                                             const Grid<ChannelStats> &stats, double sigma2, RandomStream &rng);

} // namespace aerocf
