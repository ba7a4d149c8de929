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

#include "aerocf/pilots.hpp"

#include <cmath>
#include <stdexcept>

namespace aerocf {

PilotAssignment make_pilot_assignment(std::vector<int> pilot_of, int tau_p, double pilot_power_w)
{
    if (tau_p < 1)
        throw std::invalid_argument("tau_p must be at least 1.");
    PilotAssignment pa;
    pa.tau_p = tau_p;
    pa.pilot_of = std::move(pilot_of);
    const int K = pa.num_uavs();
    std::vector<std::vector<int>> by_pilot(static_cast<std::size_t>(tau_p));
    for (int k = 0; k < K; ++k)
    {
        const int t = pa.pilot_of[k];
        if (t < 0 || t >= tau_p)
            throw std::invalid_argument("Pilot index out of range.");
        by_pilot[t].push_back(k);
    }
    pa.share_sets.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        pa.share_sets[k] = by_pilot[pa.pilot_of[k]];
    pa.pilot_power.assign(static_cast<std::size_t>(K), pilot_power_w);
    return pa;
}

PilotAssignment assign_pilots_random(int num_uavs, int tau_p, double pilot_power_w, RandomStream &rng)
{
    if (tau_p < 1)
        throw std::invalid_argument("tau_p must be at least 1.");
    std::uniform_int_distribution<int> pick(0, tau_p - 1);
    std::vector<int> pilot_of(static_cast<std::size_t>(num_uavs));
    for (auto &t : pilot_of)
        t = pick(rng);
    return make_pilot_assignment(std::move(pilot_of), tau_p, pilot_power_w);
}

Eigen::MatrixXcd psi_matrix(int k, int l, const PilotAssignment &pilots, const Grid<ChannelStats> &stats,
                            double sigma2)
{
    const double tau = pilots.tau_p;
    const Eigen::Index N = stats(k, l).scatter_cov.rows();
    Eigen::MatrixXcd psi = tau * sigma2 * Eigen::MatrixXcd::Identity(N, N);
    for (int i : pilots.share_sets[k])
        psi += tau * tau * pilots.pilot_power[i] * stats(i, l).scatter_cov;
    return psi;
}

LinkEstimate link_estimate(int k, int l, const PilotAssignment &pilots, const Grid<ChannelStats> &stats,
                           double sigma2)
{
    const Eigen::MatrixXcd &c = stats(k, l).scatter_cov;
    LinkEstimate le;
    le.psi = psi_matrix(k, l, pilots, stats, sigma2);
    if (c.norm() == 0.0)
    {
        // Deterministic link: the estimate is the mean, whatever Psi is.
        const Eigen::Index N = c.rows();
        le.gain = le.c_hat = le.c_err = Eigen::MatrixXcd::Zero(N, N);
        return le;
    }
    Eigen::LLT<Eigen::MatrixXcd> llt(le.psi);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("Pilot covariance is numerically singular.");
    const double scale = std::sqrt(pilots.pilot_power[k]) * pilots.tau_p;
    // C Psi^{-1} = (Psi^{-1} C)^H for Hermitian C and Psi.
    const Eigen::MatrixXcd c_psi_inv = llt.solve(c).adjoint();
    le.gain = scale * c_psi_inv;
    Eigen::MatrixXcd c_hat = scale * scale * c_psi_inv * c;
    le.c_hat = 0.5 * (c_hat + c_hat.adjoint());
    le.c_err = c - le.c_hat;
    return le;
}

ErrorCovariance error_covariance(int k, int l, const PilotAssignment &pilots, const Grid<ChannelStats> &stats,
                                 double sigma2)
{
    LinkEstimate le = link_estimate(k, l, pilots, stats, sigma2);
    return {std::move(le.c_err), std::move(le.c_hat)};
}

Grid<LinkEstimate> estimation_statistics(const PilotAssignment &pilots, const Grid<ChannelStats> &stats,
                                         double sigma2)
{
    if (static_cast<std::size_t>(pilots.num_uavs()) != stats.rows())
        throw std::invalid_argument("Pilot assignment and channel statistics disagree on K.");
    Grid<LinkEstimate> out(stats.rows(), stats.cols());
    for (std::size_t k = 0; k < stats.rows(); ++k)
        for (std::size_t l = 0; l < stats.cols(); ++l)
            out(k, l) = link_estimate(static_cast<int>(k), static_cast<int>(l), pilots, stats, sigma2);
    return out;
}

EstimationResult simulate_pilot_and_estimate(const ChannelEnsemble &realizations, const PilotAssignment &pilots,
                                             const Grid<ChannelStats> &stats, double sigma2, RandomStream &rng)
{
    EstimationResult res;
    res.links = estimation_statistics(pilots, stats, sigma2);
    const int K = static_cast<int>(stats.rows());
    const int L = static_cast<int>(stats.cols());
    const int tau_p = pilots.tau_p;
    const double tau = tau_p;
    const double noise_std = std::sqrt(tau * sigma2);

    res.h_hat.reserve(realizations.size());
    for (const ChannelTable &h : realizations)
    {
        if (h.num_uavs() != K || h.num_orus() != L)
            throw std::invalid_argument("Channel realization does not match the statistics grid.");
        const int N = h.antennas();
        ChannelTable est(K, L, N);
        for (int l = 0; l < L; ++l)
        {
            // Centered despread observation y - E[y] for every pilot at this O-RU.
            Eigen::MatrixXcd centered(N, tau_p);
            for (int t = 0; t < tau_p; ++t)
                for (int n = 0; n < N; ++n)
                    centered(n, t) = noise_std * complex_normal(rng);
            for (int i = 0; i < K; ++i)
                centered.col(pilots.pilot_of[i]) +=
                    tau * std::sqrt(pilots.pilot_power[i]) * (h.link(i, l) - stats(i, l).mean);
            for (int k = 0; k < K; ++k)
                est.link(k, l) = stats(k, l).mean + res.links(k, l).gain * centered.col(pilots.pilot_of[k]);
        }
        res.h_hat.push_back(std::move(est));
    }
    return res;
}

} // namespace aerocf
