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

#include "aerocf/receiver.hpp"

#include <cmath>
#include <stdexcept>

namespace aerocf {

namespace {

// sum_i p_i C_err_il + sigma2 I, shared by every realization.
Eigen::MatrixXcd error_floor(const Grid<LinkEstimate> &links, const PowerVector &powers, int l, double sigma2)
{
    const Eigen::Index N = links(0, l).c_err.rows();
    Eigen::MatrixXcd z = sigma2 * Eigen::MatrixXcd::Identity(N, N);
    for (std::size_t i = 0; i < links.rows(); ++i)
        z += powers[i] * links(i, l).c_err;
    return z;
}

Eigen::LLT<Eigen::MatrixXcd> factor_gram(const Eigen::MatrixXcd &floor, const Eigen::Map<const Eigen::MatrixXcd> &hh,
                                        const Eigen::VectorXd &p)
{
    Eigen::MatrixXcd gram = floor;
    gram.noalias() += hh * p.asDiagonal() * hh.adjoint();
    Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("L-MMSE Gram matrix is not invertible.");
    return llt;
}

void check_powers(const PowerVector &powers, std::size_t K)
{
    if (powers.size() != K)
        throw std::invalid_argument("Power vector length does not match the number of UAVs.");
    for (double p : powers)
        if (!(p >= 0.0))
            throw std::invalid_argument("Powers must be non-negative.");
}

} // namespace

CombinerSet lmmse_combiner(const ChannelTable &h_hat, const Grid<LinkEstimate> &links, const PowerVector &powers,
                           double sigma2)
{
    const int K = h_hat.num_uavs();
    const int L = h_hat.num_orus();
    check_powers(powers, static_cast<std::size_t>(K));
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("Noise power must be positive.");
    const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(powers.data(), K);

    CombinerSet v(K, L, h_hat.antennas());
    for (int l = 0; l < L; ++l)
    {
        const auto hh = h_hat.oru_block(l);
        const auto llt = factor_gram(error_floor(links, powers, l, sigma2), hh, p);
        const Eigen::MatrixXcd vl = llt.solve(Eigen::MatrixXcd(hh));
        for (int k = 0; k < K; ++k)
            v.link(k, l) = vl.col(k);
    }
    return v;
}

Grid<double> cpu_weights(const AssociationMatrix &assoc, const Grid<double> &beta)
{
    if (beta.rows() != static_cast<std::size_t>(assoc.num_uavs()) ||
        beta.cols() != static_cast<std::size_t>(assoc.num_orus()))
        throw std::invalid_argument("Association and beta dimensions differ.");
    Grid<double> alpha(beta.rows(), beta.cols(), 0.0);
    for (int k = 0; k < assoc.num_uavs(); ++k)
        for (int l = 0; l < assoc.num_orus(); ++l)
            if (assoc(k, l))
                alpha(k, l) = std::sqrt(beta(k, l));
    return alpha;
}

LinkExpectations::LinkExpectations(int num_uavs, int num_orus)
    : k_(num_uavs), l_(num_orus), mean_gain_(static_cast<std::size_t>(num_uavs) * num_orus, cplx{0.0, 0.0}),
      second_(static_cast<std::size_t>(num_uavs) * num_orus * num_uavs, 0.0),
      norm_(static_cast<std::size_t>(num_uavs) * num_orus, 0.0)
{
}

LinkExpectations compute_link_expectations(const ChannelEnsemble &channels, const EstimationResult &estimates,
                                           const PowerVector &combiner_powers, double sigma2)
{
    if (channels.empty() || channels.size() != estimates.h_hat.size())
        throw std::invalid_argument("Channel and estimate ensembles must be non-empty and of equal size.");
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("Noise power must be positive.");
    const int K = channels.front().num_uavs();
    const int L = channels.front().num_orus();
    check_powers(combiner_powers, static_cast<std::size_t>(K));
    const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(combiner_powers.data(), K);

    LinkExpectations ex(K, L);
    ex.combiner_powers = combiner_powers;
    ex.samples = static_cast<int>(channels.size());

    std::vector<Eigen::MatrixXcd> floors;
    floors.reserve(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l)
        floors.push_back(error_floor(estimates.links, combiner_powers, l, sigma2));

    Eigen::MatrixXcd vl;
    Eigen::MatrixXcd w;
    for (std::size_t r = 0; r < channels.size(); ++r)
    {
        const ChannelTable &h = channels[r];
        const ChannelTable &hat = estimates.h_hat[r];
        for (int l = 0; l < L; ++l)
        {
            const auto hh = hat.oru_block(l);
            const auto llt = factor_gram(floors[l], hh, p);
            vl = llt.solve(Eigen::MatrixXcd(hh));
            // w(k, i) = v_kl^H h_il
            w.noalias() = vl.adjoint() * h.oru_block(l);
            for (int k = 0; k < K; ++k)
            {
                ex.mean_gain(k, l) += w(k, k);
                ex.combiner_norm(k, l) += vl.col(k).squaredNorm();
                for (int i = 0; i < K; ++i)
                    ex.second_moment(k, l, i) += std::norm(w(k, i));
            }
        }
    }

    const double inv = 1.0 / static_cast<double>(channels.size());
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l)
        {
            ex.mean_gain(k, l) *= inv;
            ex.combiner_norm(k, l) *= inv;
            for (int i = 0; i < K; ++i)
                ex.second_moment(k, l, i) *= inv;
        }
    return ex;
}

SinrCoefficients estimate_sinr_coefficients(const LinkExpectations &ex, const AssociationMatrix &assoc,
                                            const Grid<double> &weights, double sigma2)
{
    const int K = ex.num_uavs();
    const int L = ex.num_orus();
    if (assoc.num_uavs() != K || assoc.num_orus() != L || weights.rows() != static_cast<std::size_t>(K) ||
        weights.cols() != static_cast<std::size_t>(L))
        throw std::invalid_argument("Association, weights and expectations dimensions differ.");

    SinrCoefficients coef;
    coef.a = Eigen::VectorXd::Zero(K);
    coef.d = Eigen::VectorXd::Zero(K);
    coef.b = Eigen::MatrixXd::Zero(K, K);
    coef.c = Eigen::VectorXd::Zero(K);
    coef.combiner_powers = ex.combiner_powers;

    for (int k = 0; k < K; ++k)
    {
        cplx coherent{0.0, 0.0};
        for (int l = 0; l < L; ++l)
        {
            if (!assoc(k, l))
                continue;
            const double alpha = weights(k, l);
            const double alpha2 = alpha * alpha;
            const cplx m = ex.mean_gain(k, l);
            coherent += alpha * m;
            double var = ex.second_moment(k, l, k) - std::norm(m);
            if (var < 0.0)
            {
                var = 0.0;
                ++coef.variance_clamps;
            }
            coef.d(k) += alpha2 * var;
            for (int i = 0; i < K; ++i)
                if (i != k)
                    coef.b(k, i) += alpha2 * ex.second_moment(k, l, i);
            coef.c(k) += alpha2 * ex.combiner_norm(k, l);
        }
        coef.a(k) = std::norm(coherent);
        coef.c(k) *= sigma2;
    }
    return coef;
}

SinrCoefficients sinr_coefficients(const LinkExpectations &ex, const AssociationMatrix &assoc,
                                   const Grid<double> &beta, double sigma2)
{
    return estimate_sinr_coefficients(ex, assoc, cpu_weights(assoc, beta), sigma2);
}

std::vector<double> sinr(const SinrCoefficients &coef, const PowerVector &p)
{
    const int K = coef.size();
    if (p.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("Power vector length does not match the coefficients.");
    std::vector<double> out(static_cast<std::size_t>(K), 0.0);
    for (int k = 0; k < K; ++k)
    {
        if (!(coef.a(k) > 0.0))
            continue;
        double interference = coef.c(k) + p[k] * coef.d(k);
        for (int i = 0; i < K; ++i)
            if (i != k)
                interference += coef.b(k, i) * p[i];
        const double signal = p[k] * coef.a(k);
        out[k] = signal > 0.0 ? signal / interference : 0.0;
    }
    return out;
}

SeVector spectral_efficiency(const std::vector<double> &sinr, int tau_p, int tau_c)
{
    if (tau_c <= 0 || tau_p < 0 || tau_p >= tau_c)
        throw std::invalid_argument("Require 0 <= tau_p < tau_c.");
    const double prelog = 1.0 - static_cast<double>(tau_p) / tau_c;
    SeVector out;
    out.sinr = sinr;
    out.se.reserve(sinr.size());
    for (double g : sinr)
    {
        if (g < 0.0)
            throw std::invalid_argument("SINR cannot be negative.");
        out.se.push_back(prelog * std::log2(1.0 + g));
    }
    return out;
}

} // namespace aerocf
