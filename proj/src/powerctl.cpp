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

#include "aerocf/powerctl.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aerocf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool all_served(const SinrCoefficients &coef)
{
    for (int k = 0; k < coef.size(); ++k)
        if (!(coef.a(k) > 0.0))
            return false;
    return true;
}

// Result for coefficient sets with an unserved UAV: max-min is zero.
PowerControlResult degenerate_result(const SinrCoefficients &coef, double p_max, Clock::time_point start)
{
    PowerControlResult res;
    res.p_star = full_power(coef.size(), p_max);
    res.gamma_star = coef.size() > 0 ? min_value(sinr(coef, res.p_star)) : 0.0;
    res.feasible = false;
    res.elapsed_s = seconds_since(start);
    return res;
}

} // namespace

double min_value(const std::vector<double> &v)
{
    if (v.empty())
        throw std::invalid_argument("Minimum of an empty vector.");
    return *std::min_element(v.begin(), v.end());
}

PowerVector full_power(int num_uavs, double p_max)
{
    if (num_uavs < 0)
        throw std::invalid_argument("Number of UAVs cannot be negative.");
    return PowerVector(static_cast<std::size_t>(num_uavs), p_max);
}

FixedPointResult fixed_point_min_power(const SinrCoefficients &coef, double gamma_target, double p_max,
                                       double eps_fp, int n_max_fp, std::uint64_t *work)
{
    if (!(gamma_target > 0.0))
        throw std::invalid_argument("Target SINR must be positive.");
    const int K = coef.size();
    FixedPointResult res;

    Eigen::VectorXd gain(K);
    for (int k = 0; k < K; ++k)
    {
        const double denom = coef.a(k) - gamma_target * coef.d(k);
        if (!(denom > 0.0))
        {
            res.self_term_ok = false;
            res.p.assign(static_cast<std::size_t>(K), std::numeric_limits<double>::infinity());
            return res;
        }
        gain(k) = gamma_target / denom;
    }

    Eigen::VectorXd p = Eigen::VectorXd::Constant(K, p_max);
    Eigen::VectorXd next(K);
    const double stop = eps_fp * p_max;
    for (int n = 0; n < n_max_fp; ++n)
    {
        // b has a zero diagonal, so B p is the interference sum over i != k.
        next.noalias() = coef.b * p;
        next += coef.c;
        next = gain.cwiseProduct(next);
        if (work)
            *work += static_cast<std::uint64_t>(K) * static_cast<std::uint64_t>(K - 1);
        const double step = (next - p).cwiseAbs().maxCoeff();
        p.swap(next);
        ++res.iterations;
        if (step < stop)
        {
            res.converged = true;
            break;
        }
    }
    res.p.assign(p.data(), p.data() + K);
    return res;
}

PowerControlResult bg_fppc(const SinrCoefficients &coef, const PowerControlParams &params,
                           const std::vector<double> &gamma_init)
{
    const auto start = Clock::now();
    const int K = coef.size();
    if (gamma_init.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("gamma_init length does not match the coefficients.");
    if (K == 0 || !all_served(coef))
        return degenerate_result(coef, params.p_max, start);

    PowerControlResult res;
    res.p_star = full_power(K, params.p_max);
    res.gamma_star = min_value(gamma_init);
    double lo = 0.0;
    double hi = 1.5 * *std::max_element(gamma_init.begin(), gamma_init.end());
    if (!(hi > 0.0))
        return degenerate_result(coef, params.p_max, start);

    while ((hi - lo) / hi > params.eps_bisect && res.bisect_iterations < params.max_bisect_iterations)
    {
        const double mid = 0.5 * (lo + hi);
        ++res.bisect_iterations;
        const FixedPointResult fp =
            fixed_point_min_power(coef, mid, params.p_max, params.eps_fp, params.n_max_fp, &res.work);
        res.fp_iterations += fp.iterations;

        const bool within_box = fp.self_term_ok && *std::max_element(fp.p.begin(), fp.p.end()) <= params.p_max;
        if (!within_box)
        {
            hi = mid;
            continue;
        }
        lo = mid;
        PowerVector candidate = fp.p;
        for (double &pk : candidate)
            pk = std::min(pk, params.p_max);
        const double achieved = min_value(sinr(coef, candidate));
        res.max_clamp_gap = std::max(res.max_clamp_gap, (mid - achieved) / mid);
        if (achieved >= res.gamma_star)
        {
            res.p_star = std::move(candidate);
            res.gamma_star = achieved;
        }
    }
    res.feasible = res.gamma_star >= params.gamma_floor;
    res.elapsed_s = seconds_since(start);
    return res;
}

PowerControlResult bg_fppc(const SinrCoefficients &coef, const PowerControlParams &params)
{
    return bg_fppc(coef, params, sinr(coef, full_power(coef.size(), params.p_max)));
}

std::optional<Eigen::VectorXd> min_power_for_target(const SinrCoefficients &coef, double gamma)
{
    const int K = coef.size();
    Eigen::VectorXd diag = coef.a - gamma * coef.d;
    if (K == 0 || !(diag.minCoeff() > 0.0))
        return std::nullopt;
    Eigen::MatrixXd m = -gamma * coef.b;
    m.diagonal() = diag;
    const Eigen::VectorXd p = m.partialPivLu().solve(gamma * coef.c);
    // With c > 0 a positive solution certifies that m is a nonsingular M-matrix,
    // i.e. the target is reachable with finite power.
    for (int k = 0; k < K; ++k)
        if (!std::isfinite(p(k)) || !(p(k) > 0.0))
            return std::nullopt;
    return p;
}

PowerControlResult reference_max_min(const SinrCoefficients &coef, double p_max, double tol, double gamma_floor)
{
    const auto start = Clock::now();
    const int K = coef.size();
    if (K == 0 || !all_served(coef))
        return degenerate_result(coef, p_max, start);

    const auto fits = [&](double gamma) -> std::optional<Eigen::VectorXd> {
        auto p = min_power_for_target(coef, gamma);
        if (p && p->maxCoeff() <= p_max)
            return p;
        return std::nullopt;
    };

    // Every UAV is at most as good as when it transmits at p_max without interference.
    double hi = std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k)
        hi = std::min(hi, p_max * coef.a(k) / (p_max * coef.d(k) + coef.c(k)));
    double lo = 0.0;
    std::optional<Eigen::VectorXd> best;

    PowerControlResult res;
    if (auto p = fits(hi))
    {
        lo = hi;
        best = std::move(p);
    }
    while (lo < hi && (hi - lo) / hi > tol && res.bisect_iterations < 400)
    {
        const double mid = 0.5 * (lo + hi);
        ++res.bisect_iterations;
        res.work += static_cast<std::uint64_t>(K) * K * K;
        if (auto p = fits(mid))
        {
            lo = mid;
            best = std::move(p);
        }
        else
        {
            hi = mid;
        }
    }

    res.p_star = full_power(K, p_max);
    res.gamma_star = min_value(sinr(coef, res.p_star));
    if (best)
    {
        PowerVector candidate(best->data(), best->data() + K);
        const double achieved = min_value(sinr(coef, candidate));
        if (achieved >= res.gamma_star)
        {
            res.p_star = std::move(candidate);
            res.gamma_star = achieved;
        }
    }
    res.feasible = res.gamma_star >= gamma_floor;
    res.elapsed_s = seconds_since(start);
    return res;
}

} // namespace aerocf
