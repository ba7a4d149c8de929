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
#include "aerocf/scenario.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

namespace aerocf {

using cplx = std::complex<double>;

struct LinkGeometry
{
    double d_2d = 0.0;
    double d_3d = 0.0;
    double elevation = 0.0; // rad, positive when the UAV is above the O-RU
    double azimuth = 0.0;   // rad, direction O-RU -> UAV in the horizontal plane
    double uav_height = 0.0;
    double oru_height = 0.0;
};

struct LargeScaleLink
{
    bool is_los = false;
    double path_loss_db = 0.0;
    double shadow_db = 0.0;
    double beta = 0.0; // linear gain
    double rician_k_linear = 0.0;
};

/// Mean-plus-deviation statistics of one UAV/O-RU link.
struct ChannelStats
{
    Eigen::VectorXcd mean;       // LoS part, sqrt(beta K/(K+1)) a
    Eigen::MatrixXcd scatter_cov; // beta/(K+1) R
    Eigen::MatrixXcd corr;       // R, trace N
    Eigen::VectorXcd los_steering;
};

/// Geometry, large-scale state and per-link statistics of one trial.
struct LinkTables
{
    Grid<LinkGeometry> geometry;
    Grid<LargeScaleLink> large_scale;
    Grid<double> angular_spread_deg;
    Grid<ChannelStats> stats;

    Grid<double> beta() const;
};

/// One small-scale draw of every channel vector. Storage is O-RU-major so the
/// N x K block of all UAVs seen by one O-RU is contiguous (column-major).
class ChannelTable
{
public:
    ChannelTable() = default;
    ChannelTable(int num_uavs, int num_orus, int antennas)
        : k_(num_uavs), l_(num_orus), n_(antennas),
          data_(static_cast<std::size_t>(num_uavs) * num_orus * antennas, cplx{0.0, 0.0}) {}

    int num_uavs() const noexcept { return k_; }
    int num_orus() const noexcept { return l_; }
    int antennas() const noexcept { return n_; }

    Eigen::Map<Eigen::VectorXcd> link(int k, int l) { return Eigen::Map<Eigen::VectorXcd>(ptr(k, l), n_); }
    Eigen::Map<const Eigen::VectorXcd> link(int k, int l) const
    {
        return Eigen::Map<const Eigen::VectorXcd>(ptr(k, l), n_);
    }
    /// N x K matrix whose column k is the channel of UAV k at O-RU l.
    Eigen::Map<const Eigen::MatrixXcd> oru_block(int l) const
    {
        return Eigen::Map<const Eigen::MatrixXcd>(ptr(0, l), n_, k_);
    }

    const std::vector<cplx> &data() const noexcept { return data_; }
    bool operator==(const ChannelTable &) const = default;

private:
    cplx *ptr(int k, int l) { return data_.data() + (static_cast<std::size_t>(l) * k_ + k) * n_; }
    const cplx *ptr(int k, int l) const { return data_.data() + (static_cast<std::size_t>(l) * k_ + k) * n_; }

    int k_ = 0;
    int l_ = 0;
    int n_ = 0;
    std::vector<cplx> data_;
};

using ChannelEnsemble = std::vector<ChannelTable>;

Grid<LinkGeometry> link_geometry(const Topology &topo);

/// UMa-AV LoS probability; valid for UAV heights in (22.5, 300] m.
double los_probability(const LinkGeometry &geom);

bool sample_los_state(double prob, RandomStream &rng);

/// UMa-AV path loss in dB. f_c in GHz.
double path_loss_db(const LinkGeometry &geom, bool is_los, double carrier_freq_ghz);

LargeScaleLink large_scale(const LinkGeometry &geom, bool is_los, const ExperimentConfig &cfg,
                           RandomStream &shadow_rng, RandomStream &rician_rng);

/// Sine of the angle seen by the linear array (elevation projected onto the
/// array axis at the configured orientation).
double array_sine(const LinkGeometry &geom, double array_azimuth_rad = 0.0);

Eigen::VectorXcd steering_vector(const LinkGeometry &geom, int antennas, double array_azimuth_rad = 0.0);

/// Gaussian local-scattering correlation around the array angle, trace N.
Eigen::MatrixXcd spatial_correlation(const LinkGeometry &geom, double angular_spread_deg, int antennas,
                                     double array_azimuth_rad = 0.0);

ChannelStats channel_stats(const LargeScaleLink &ls, const Eigen::VectorXcd &a_los, const Eigen::MatrixXcd &corr);

/// Draws LoS states, shadowing, K-factors and angular spreads for one trial and
/// assembles the per-link statistics.
LinkTables build_link_tables(const Topology &topo, const ExperimentConfig &cfg, std::uint64_t trial_index);

/// h = mean + C^{1/2} z for every link and realization. Throws on non-PSD C.
ChannelEnsemble draw_channels(const Grid<ChannelStats> &stats, int n_realizations, RandomStream &rng);

/// Hermitian PSD square root; throws std::invalid_argument if an eigenvalue is
/// below -1e-10 times the largest magnitude.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd &m);

/// Standard circularly-symmetric complex Gaussian sample.
cplx complex_normal(RandomStream &rng);

/// CSV with k,l,is_los,path_loss_db,shadow_db,beta,rician_k,angular_spread_deg.
void write_link_dump(std::ostream &out, const LinkTables &links);

} // namespace aerocf
