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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aerocf/pilots.hpp"
#include "oracles.hpp"

using namespace aerocf;

namespace {

Eigen::MatrixXcd to_eigen(const oracle::CDense &m)
{
    Eigen::MatrixXcd out(m.size(), m.size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m.size(); ++c)
            out(r, c) = m[r][c];
    return out;
}

oracle::CDense to_dense(const Eigen::MatrixXcd &m)
{
    oracle::CDense out(m.rows(), std::vector<oracle::cplx>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out[r][c] = m(r, c);
    return out;
}

/// Two-antenna correlated scattering with a LoS mean, scaled to beta.
ChannelStats link_stats(double beta, double k_factor, double angle, double spread)
{
    ChannelStats st;
    const double s = std::sin(angle);
    const double pi = 3.14159265358979323846;
    Eigen::MatrixXcd r(2, 2);
    const std::complex<double> off =
        std::polar(1.0, pi * s) * std::exp(-0.5 * std::pow(pi * spread * std::cos(angle), 2));
    r << 1.0, std::conj(off), off, 1.0;
    Eigen::VectorXcd a(2);
    a << 1.0, std::polar(1.0, pi * s);
    st.corr = r;
    st.los_steering = a;
    st.mean = std::sqrt(beta * k_factor / (k_factor + 1.0)) * a;
    st.scatter_cov = beta / (k_factor + 1.0) * r;
    return st;
}

Grid<ChannelStats> scalar_stats(double c)
{
    Grid<ChannelStats> g(1, 1);
    g(0, 0).mean = Eigen::VectorXcd::Zero(1);
    g(0, 0).scatter_cov = Eigen::MatrixXcd::Constant(1, 1, c);
    return g;
}

} // namespace

TEST_CASE("pilot assignment")
{
    RandomStream rng = derive_stream({1, 0, StreamPurpose::pilot_assignment});
    const PilotAssignment one = assign_pilots_random(1, 10, 0.2, rng);
    CHECK(one.share_sets[0] == std::vector<int>{0});

    const PilotAssignment pa = make_pilot_assignment({0, 1, 0, 2, 1}, 3, 0.2);
    CHECK(pa.share_sets[0] == std::vector<int>{0, 2});
    CHECK(pa.share_sets[2] == std::vector<int>{0, 2});
    CHECK(pa.share_sets[4] == std::vector<int>{1, 4});
    CHECK(pa.share_sets[3] == std::vector<int>{3});
    CHECK_THROWS_AS(make_pilot_assignment({0, 3}, 3, 0.2), std::invalid_argument);

    RandomStream a = derive_stream({1, 4, StreamPurpose::pilot_assignment});
    RandomStream b = derive_stream({1, 4, StreamPurpose::pilot_assignment});
    CHECK(assign_pilots_random(30, 5, 0.2, a).pilot_of == assign_pilots_random(30, 5, 0.2, b).pilot_of);
}

TEST_CASE("random pilots collide at the birthday rate")
{
    // 1 - 10!/10^10
    const double expected = 1.0 - 3628800.0 / 1e10;
    RandomStream rng = derive_stream({2, 0, StreamPurpose::pilot_assignment});
    const int trials = 20000;
    int collisions = 0;
    for (int t = 0; t < trials; ++t)
    {
        const PilotAssignment pa = assign_pilots_random(10, 10, 0.2, rng);
        bool hit = false;
        for (const auto &s : pa.share_sets)
            hit = hit || s.size() > 1;
        collisions += hit;
    }
    const double sd = std::sqrt(expected * (1.0 - expected) / trials);
    CHECK(std::abs(collisions / double(trials) - expected) < 5.0 * sd + 1e-4);
}

TEST_CASE("psi matrix hand values")
{
    const PilotAssignment pa = make_pilot_assignment({0}, 10, 0.2);
    const Eigen::MatrixXcd psi = psi_matrix(0, 0, pa, scalar_stats(1e-10), 6.31e-13);
    CHECK(psi(0, 0).real() == doctest::Approx(2.0063e-9).epsilon(1e-12));

    const auto ec = error_covariance(0, 0, pa, scalar_stats(1e-10), 6.31e-13);
    CHECK(ec.c_hat(0, 0).real() == doctest::Approx(9.969e-11).epsilon(1e-4));
    CHECK(ec.c_hat(0, 0).real() == doctest::Approx(100.0 * 0.2 * 1e-20 / 2.0063e-9).epsilon(1e-12));
}

TEST_CASE("estimator covariances against an explicit-inverse oracle")
{
    Grid<ChannelStats> stats(3, 1);
    stats(0, 0) = link_stats(2e-10, 1.5, 0.4, 0.15);
    stats(1, 0) = link_stats(7e-11, 0.0, -0.9, 0.2);
    stats(2, 0) = link_stats(4e-10, 3.0, 1.1, 0.1);
    const PilotAssignment pa = make_pilot_assignment({0, 0, 1}, 2, 0.2);
    const double sigma2 = 6.31e-13;

    for (int k = 0; k < 3; ++k)
    {
        const LinkEstimate le = link_estimate(k, 0, pa, stats, sigma2);
        const Eigen::MatrixXcd &c = stats(k, 0).scatter_cov;
        Eigen::MatrixXcd psi = 2.0 * sigma2 * Eigen::MatrixXcd::Identity(2, 2);
        for (int i : pa.share_sets[k])
            psi += 4.0 * 0.2 * stats(i, 0).scatter_cov;
        const Eigen::MatrixXcd psi_inv = to_eigen(oracle::inverse(to_dense(psi)));
        const Eigen::MatrixXcd c_hat = 4.0 * 0.2 * c * psi_inv * c;
        CHECK((le.psi - psi).norm() / psi.norm() < 1e-12);
        CHECK((le.c_hat - c_hat).norm() / c.norm() < 1e-9);
        CHECK((le.c_hat + le.c_err - c).norm() / c.norm() < 1e-9);
        CHECK((le.c_err - le.c_err.adjoint()).norm() / c.norm() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(le.c_err);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9 * c.norm());
    }
}

TEST_CASE("estimator limits")
{
    Grid<ChannelStats> stats(1, 1);
    stats(0, 0) = link_stats(1e-10, 0.5, 0.3, 0.14);
    const double cn = stats(0, 0).scatter_cov.norm();

    const auto silent = error_covariance(0, 0, make_pilot_assignment({0}, 10, 1e-15), stats, 6.31e-13);
    CHECK(silent.c_hat.norm() / cn < 1e-3);
    CHECK((silent.c_err - stats(0, 0).scatter_cov).norm() / cn < 1e-3);

    const auto noiseless = error_covariance(0, 0, make_pilot_assignment({0}, 10, 0.2), stats, 1e-20);
    CHECK(noiseless.c_err.norm() / cn < 1e-6);
}

TEST_CASE("contamination increases Psi and the error")
{
    Grid<ChannelStats> stats(2, 1);
    stats(0, 0) = link_stats(1e-10, 1.0, 0.2, 0.14);
    stats(1, 0) = link_stats(3e-10, 2.0, -0.5, 0.14);
    const double sigma2 = 6.31e-13;
    const PilotAssignment clean = make_pilot_assignment({0, 1}, 2, 0.2);
    const PilotAssignment shared = make_pilot_assignment({0, 0}, 2, 0.2);
    const LinkEstimate a = link_estimate(0, 0, clean, stats, sigma2);
    const LinkEstimate b = link_estimate(0, 0, shared, stats, sigma2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> diff(b.psi - a.psi);
    CHECK(diff.eigenvalues().minCoeff() >= -1e-24);
    CHECK(b.c_err.trace().real() >= a.c_err.trace().real());
}

TEST_CASE("deterministic noiseless link is estimated exactly")
{
    Grid<ChannelStats> stats(1, 1);
    stats(0, 0).mean = Eigen::VectorXcd::Constant(2, std::complex<double>(1e-5, 2e-5));
    stats(0, 0).scatter_cov = Eigen::MatrixXcd::Zero(2, 2);
    RandomStream rng = derive_stream({1, 0, StreamPurpose::scattering});
    const ChannelEnsemble h = draw_channels(stats, 4, rng);
    RandomStream noise = derive_stream({1, 0, StreamPurpose::pilot_noise});
    const EstimationResult est = simulate_pilot_and_estimate(h, make_pilot_assignment({0}, 3, 0.2), stats, 0.0, noise);
    for (std::size_t s = 0; s < h.size(); ++s)
    {
        CHECK(est.h_hat[s].link(0, 0) == stats(0, 0).mean);
        CHECK(h[s].link(0, 0) == stats(0, 0).mean);
    }
}

TEST_CASE("simulated estimates match their second-order description")
{
    // N = 2, two UAVs on one pilot.
    Grid<ChannelStats> stats(2, 1);
    stats(0, 0) = link_stats(2e-10, 1.0, 0.35, 0.14);
    stats(1, 0) = link_stats(1e-10, 4.0, -0.6, 0.2);
    const PilotAssignment pa = make_pilot_assignment({0, 0}, 5, 0.2);
    const double sigma2 = 6.31e-13;
    const int n = 100000;
    RandomStream rng = derive_stream({5, 0, StreamPurpose::scattering});
    RandomStream noise = derive_stream({5, 0, StreamPurpose::pilot_noise});
    const ChannelEnsemble h = draw_channels(stats, n, rng);
    const EstimationResult est = simulate_pilot_and_estimate(h, pa, stats, sigma2, noise);

    for (int k = 0; k < 2; ++k)
    {
        const Eigen::VectorXcd &mean = stats(k, 0).mean;
        Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::MatrixXcd cross = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::VectorXcd avg = Eigen::VectorXcd::Zero(2);
        for (int s = 0; s < n; ++s)
        {
            const Eigen::VectorXcd dev = est.h_hat[s].link(k, 0) - mean;
            const Eigen::VectorXcd err = h[s].link(k, 0) - est.h_hat[s].link(k, 0);
            cov += dev * dev.adjoint() / double(n);
            cross += dev * err.adjoint() / double(n);
            avg += est.h_hat[s].link(k, 0) / double(n);
        }
        const LinkEstimate &le = est.links(k, 0);
        const double cn = stats(k, 0).scatter_cov.norm();
        CHECK((cov - le.c_hat).norm() / le.c_hat.norm() < 0.05);
        CHECK(cross.norm() / cn < 0.03);
        CHECK((avg - mean).norm() / mean.norm() < 0.01);
    }
}
