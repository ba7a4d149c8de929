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

#include "aerocf/propagation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aerocf {

namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }

} // namespace

Grid<double> LinkTables::beta() const
{
    Grid<double> out(large_scale.rows(), large_scale.cols());
    for (std::size_t k = 0; k < out.rows(); ++k)
        for (std::size_t l = 0; l < out.cols(); ++l)
            out(k, l) = large_scale(k, l).beta;
    return out;
}

Grid<LinkGeometry> link_geometry(const Topology &topo)
{
    Grid<LinkGeometry> out(topo.uavs.size(), topo.orus.size());
    for (std::size_t k = 0; k < topo.uavs.size(); ++k)
    {
        const Position &u = topo.uavs[k];
        for (std::size_t l = 0; l < topo.orus.size(); ++l)
        {
            const Position &r = topo.orus[l];
            LinkGeometry g;
            const double dx = u.x - r.x;
            const double dy = u.y - r.y;
            const double dz = u.z - r.z;
            g.d_2d = std::hypot(dx, dy);
            g.d_3d = std::sqrt(g.d_2d * g.d_2d + dz * dz);
            if (!(g.d_3d > 0.0))
                throw std::invalid_argument("UAV " + std::to_string(k) + " is co-located with O-RU " +
                                            std::to_string(l) + ".");
            g.elevation = std::asin(dz / g.d_3d);
            g.azimuth = std::atan2(dy, dx);
            g.uav_height = u.z;
            g.oru_height = r.z;
            out(k, l) = g;
        }
    }
    return out;
}

double los_probability(const LinkGeometry &geom)
{
    const double h = geom.uav_height;
    if (!(h > 22.5 && h <= 300.0))
        throw std::invalid_argument("UMa-AV LoS probability requires UAV height in (22.5, 300] m.");
    if (h > 100.0)
        return 1.0;
    const double d1 = std::max(460.0 * std::log10(h) - 700.0, 18.0);
    const double p1 = 4300.0 * std::log10(h) - 3800.0;
    if (geom.d_2d <= d1)
        return 1.0;
    const double ratio = d1 / geom.d_2d;
    return ratio + std::exp(-geom.d_2d / p1) * (1.0 - ratio);
}

bool sample_los_state(double prob, RandomStream &rng)
{
    if (prob >= 1.0)
        return true;
    if (prob <= 0.0)
        return false;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob;
}

double path_loss_db(const LinkGeometry &geom, bool is_los, double carrier_freq_ghz)
{
    if (!(geom.d_3d > 0.0))
        throw std::invalid_argument("Path loss requires a positive 3D distance.");
    if (is_los)
        return 28.0 + 22.0 * std::log10(geom.d_3d) + 20.0 * std::log10(carrier_freq_ghz);
    const double h = geom.uav_height;
    if (!(h > 22.5 && h <= 300.0))
        throw std::invalid_argument("UMa-AV NLoS path loss requires UAV height in (22.5, 300] m.");
    return -17.5 + (46.0 - 7.0 * std::log10(h)) * std::log10(geom.d_3d) +
           20.0 * std::log10(40.0 * kPi * carrier_freq_ghz / 3.0);
}

LargeScaleLink large_scale(const LinkGeometry &geom, bool is_los, const ExperimentConfig &cfg,
                           RandomStream &shadow_rng, RandomStream &rician_rng)
{
    LargeScaleLink ls;
    ls.is_los = is_los;
    ls.path_loss_db = path_loss_db(geom, is_los, cfg.carrier_freq_ghz);
    const double sigma = is_los ? cfg.shadow_sigma_los_db : cfg.shadow_sigma_nlos_db;
    ls.shadow_db = sigma > 0.0 ? std::normal_distribution<double>(0.0, sigma)(shadow_rng) : 0.0;
    ls.beta = std::pow(10.0, -(ls.path_loss_db + ls.shadow_db) / 10.0);
    if (is_los)
    {
        const double k_db = std::uniform_real_distribution<double>(cfg.rician_k_min_db, cfg.rician_k_max_db)(rician_rng);
        ls.rician_k_linear = std::pow(10.0, k_db / 10.0);
    }
    return ls;
}

double array_sine(const LinkGeometry &geom, double array_azimuth_rad)
{
    return std::sin(geom.elevation) * std::cos(geom.azimuth - array_azimuth_rad);
}

Eigen::VectorXcd steering_vector(const LinkGeometry &geom, int antennas, double array_azimuth_rad)
{
    if (antennas < 1)
        throw std::invalid_argument("Array needs at least one antenna.");
    const double s = array_sine(geom, array_azimuth_rad);
    Eigen::VectorXcd a(antennas);
    for (int n = 0; n < antennas; ++n)
        a(n) = std::polar(1.0, kPi * n * s);
    return a;
}

Eigen::MatrixXcd spatial_correlation(const LinkGeometry &geom, double angular_spread_deg, int antennas,
                                     double array_azimuth_rad)
{
    if (!(angular_spread_deg > 0.0))
        throw std::invalid_argument("Angular spread must be positive.");
    if (antennas < 1)
        throw std::invalid_argument("Array needs at least one antenna.");
    const double s = std::clamp(array_sine(geom, array_azimuth_rad), -1.0, 1.0);
    const double c = std::sqrt(1.0 - s * s);
    const double spread = deg2rad(angular_spread_deg);

    Eigen::MatrixXcd r(antennas, antennas);
    for (int m = 0; m < antennas; ++m)
        for (int n = 0; n < antennas; ++n)
        {
            const double dist = static_cast<double>(m - n);
            const double decay = std::exp(-0.5 * std::pow(kPi * dist * spread * c, 2));
            r(m, n) = std::polar(decay, kPi * dist * s);
        }
    const double tr = r.trace().real();
    r *= static_cast<double>(antennas) / tr;
    return r;
}

ChannelStats channel_stats(const LargeScaleLink &ls, const Eigen::VectorXcd &a_los, const Eigen::MatrixXcd &corr)
{
    if (corr.rows() != a_los.size() || corr.cols() != a_los.size())
        throw std::invalid_argument("Steering vector and correlation matrix sizes differ.");
    const double kf = ls.rician_k_linear;
    ChannelStats st;
    st.los_steering = a_los;
    st.corr = corr;
    st.mean = std::sqrt(ls.beta * kf / (kf + 1.0)) * a_los;
    st.scatter_cov = (ls.beta / (kf + 1.0)) * corr;
    return st;
}

LinkTables build_link_tables(const Topology &topo, const ExperimentConfig &cfg, std::uint64_t trial_index)
{
    const auto stream = [&](StreamPurpose p) { return derive_stream({cfg.master_seed, trial_index, p}); };
    RandomStream los_rng = stream(StreamPurpose::los_state);
    RandomStream shadow_rng = stream(StreamPurpose::shadowing);
    RandomStream rician_rng = stream(StreamPurpose::rician_k);
    RandomStream spread_rng = stream(StreamPurpose::angular_spread);

    std::vector<double> spread_knots{cfg.angular_spread_min_deg};
    std::vector<double> spread_density{cfg.angular_spread_mode_deg == cfg.angular_spread_min_deg ? 1.0 : 0.0};
    if (cfg.angular_spread_mode_deg > cfg.angular_spread_min_deg &&
        cfg.angular_spread_mode_deg < cfg.angular_spread_max_deg)
    {
        spread_knots.push_back(cfg.angular_spread_mode_deg);
        spread_density.push_back(1.0);
    }
    spread_knots.push_back(cfg.angular_spread_max_deg);
    spread_density.push_back(cfg.angular_spread_mode_deg == cfg.angular_spread_max_deg ? 1.0 : 0.0);
    const bool degenerate_spread = cfg.angular_spread_min_deg == cfg.angular_spread_max_deg;
    auto triangular =
        degenerate_spread ? std::piecewise_linear_distribution<double>()
                          : std::piecewise_linear_distribution<double>(spread_knots.begin(), spread_knots.end(),
                                                                       spread_density.begin());

    const double orient = deg2rad(cfg.array_azimuth_deg);
    const int n_ant = cfg.antennas_per_oru;

    LinkTables t;
    t.geometry = link_geometry(topo);
    const std::size_t K = t.geometry.rows();
    const std::size_t L = t.geometry.cols();
    t.large_scale = Grid<LargeScaleLink>(K, L);
    t.angular_spread_deg = Grid<double>(K, L);
    t.stats = Grid<ChannelStats>(K, L);

    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < L; ++l)
        {
            const LinkGeometry &g = t.geometry(k, l);
            const bool los = sample_los_state(los_probability(g), los_rng);
            t.large_scale(k, l) = large_scale(g, los, cfg, shadow_rng, rician_rng);
            const double spread = degenerate_spread ? cfg.angular_spread_min_deg : triangular(spread_rng);
            t.angular_spread_deg(k, l) = spread;
            t.stats(k, l) = channel_stats(t.large_scale(k, l), steering_vector(g, n_ant, orient),
                                          spatial_correlation(g, spread, n_ant, orient));
        }
    return t;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd &m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("Square root requires a square matrix.");
    if (m.size() == 0)
        return m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("Eigen decomposition failed.");
    Eigen::VectorXd ev = eig.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    if (ev.minCoeff() < -1e-10 * std::max(scale, 1e-300))
        throw std::invalid_argument("Covariance matrix is not positive semidefinite.");
    ev = ev.cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().adjoint();
}

cplx complex_normal(RandomStream &rng)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    const double re = nd(rng);
    const double im = nd(rng);
    return {re, im};
}

ChannelEnsemble draw_channels(const Grid<ChannelStats> &stats, int n_realizations, RandomStream &rng)
{
    const int K = static_cast<int>(stats.rows());
    const int L = static_cast<int>(stats.cols());
    if (K == 0 || L == 0)
        return ChannelEnsemble(static_cast<std::size_t>(std::max(n_realizations, 0)));
    const int N = static_cast<int>(stats(0, 0).mean.size());

    Grid<Eigen::MatrixXcd> roots(stats.rows(), stats.cols());
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l)
        {
            if (stats(k, l).mean.size() != N || stats(k, l).scatter_cov.rows() != N)
                throw std::invalid_argument("Inconsistent antenna count across links.");
            roots(k, l) = psd_sqrt(stats(k, l).scatter_cov);
        }

    ChannelEnsemble out;
    out.reserve(static_cast<std::size_t>(n_realizations));
    Eigen::VectorXcd z(N);
    for (int r = 0; r < n_realizations; ++r)
    {
        ChannelTable table(K, L, N);
        for (int k = 0; k < K; ++k)
            for (int l = 0; l < L; ++l)
            {
                for (int n = 0; n < N; ++n)
                    z(n) = complex_normal(rng);
                table.link(k, l) = stats(k, l).mean + roots(k, l) * z;
            }
        out.push_back(std::move(table));
    }
    return out;
}

void write_link_dump(std::ostream &out, const LinkTables &links)
{
    out << "k,l,is_los,path_loss_db,shadow_db,beta,rician_k,angular_spread_deg\n";
    out.precision(9);
    for (std::size_t k = 0; k < links.large_scale.rows(); ++k)
        for (std::size_t l = 0; l < links.large_scale.cols(); ++l)
        {
            const LargeScaleLink &ls = links.large_scale(k, l);
            out << k << ',' << l << ',' << (ls.is_los ? 1 : 0) << ',' << ls.path_loss_db << ',' << ls.shadow_db
                << ',' << ls.beta << ',' << ls.rician_k_linear << ',' << links.angular_spread_deg(k, l) << '\n';
        }
}

} // namespace aerocf
