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

#include "aerocf/receiver.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace aerocf {

struct PowerControlParams
{
    double p_max = 0.2; // W
    double eps_bisect = 1e-4;
    double eps_fp = 1e-5;
    int n_max_fp = 1000;
    double gamma_floor = 0.0; // SINR equivalent of the QoS floor; 0 disables it
    int max_bisect_iterations = 200;
};

struct FixedPointResult
{
    PowerVector p;
    bool converged = false;
    bool self_term_ok = true; // false when some a_k <= gamma d_k
    int iterations = 0;
};

/// Minimum-power iteration p_k <- gamma I_k(p) / (a_k - gamma d_k) started at
/// full power. Stops on a sup-norm step below eps_fp * p_max or after n_max_fp
/// sweeps. `work` accumulates interference multiply-adds.
FixedPointResult fixed_point_min_power(const SinrCoefficients &coef, double gamma_target, double p_max,
                                       double eps_fp, int n_max_fp, std::uint64_t *work = nullptr);

struct PowerControlResult
{
    PowerVector p_star;
    double gamma_star = 0.0;
    int fp_iterations = 0;
    int bisect_iterations = 0;
    bool feasible = false;
    double elapsed_s = 0.0;
    std::uint64_t work = 0;
    // Largest relative shortfall (gamma_mid - min SINR(p*)) / gamma_mid seen on
    // a feasible probe after clamping p* to the box.
    double max_clamp_gap = 0.0;
};

/// Bisection over the common SINR target with the fixed-point inner solver.
/// `gamma_init` is the SINR vector at full power.
PowerControlResult bg_fppc(const SinrCoefficients &coef, const PowerControlParams &params,
                           const std::vector<double> &gamma_init);

/// Convenience overload computing gamma_init at full power.
PowerControlResult bg_fppc(const SinrCoefficients &coef, const PowerControlParams &params);

/// Smallest p with Gamma_k(p) = gamma for all k, from the linear system
/// (diag(a - gamma d) - gamma B) p = gamma c. Empty when no non-negative
/// solution exists.
std::optional<Eigen::VectorXd> min_power_for_target(const SinrCoefficients &coef, double gamma);

/// Exact max-min reference: bisection with a linear-solve feasibility test.
PowerControlResult reference_max_min(const SinrCoefficients &coef, double p_max, double tol,
                                     double gamma_floor = 0.0);

PowerVector full_power(int num_uavs, double p_max);

double min_value(const std::vector<double> &v);

} // namespace aerocf
