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

#include <array>
#include <cstdint>
#include <istream>
#include <random>
#include <string>
#include <vector>

namespace aerocf {

/// Experiment configuration. Defaults reproduce the reference simulation table;
/// bandwidth and O-RU height are not part of that table and use 20 MHz / 25 m.
struct ExperimentConfig
{
    double area_side_m = 1000.0;
    int num_orus = 100;       // L
    int antennas_per_oru = 4; // N
    int num_uavs = 50;        // K
    double uav_alt_min_m = 50.0;
    double uav_alt_max_m = 150.0;
    double oru_height_m = 25.0;
    double carrier_freq_ghz = 2.6;
    int coherence_len = 200; // tau_c
    int pilot_len = 10;      // tau_p
    double rician_k_min_db = 0.0;
    double rician_k_max_db = 20.0;
    double shadow_sigma_los_db = 4.0;
    double shadow_sigma_nlos_db = 6.0;
    double angular_spread_min_deg = 5.0;
    double angular_spread_max_deg = 15.0;
    double angular_spread_mode_deg = 8.0; // triangular draw
    double array_azimuth_deg = 0.0;       // global array orientation
    double p_max_dbm = 23.0;
    double noise_psd_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    double bandwidth_hz = 20e6;
    double se_min = 1.0; // bit/s/Hz
    int n_top = 3;
    double eps_ao = 1e-3; // absolute, bit/s/Hz
    int i_max_ao = 15;
    double eps_bisect = 1e-4;
    double eps_fp = 1e-5;
    int n_max_fp = 1000;
    double reference_tol = 1e-9; // bisection tolerance of the exact max-min solver
    int n_channel_realizations = 200;
    int trials = 500;
    std::uint64_t master_seed = 1;

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;

    double p_max_w() const;
    double noise_power_w() const;
    double prelog() const; // 1 - tau_p / tau_c
    /// SINR matching se_min under the current prelog.
    double sinr_min() const;
};

/// Reduced preset used for quick runs: L=25, N=2, tau_p=5, 50 trials.
ExperimentConfig desk_scale(ExperimentConfig base = {});

/// Applies `key = value` lines ('#' starts a comment). Unknown keys and malformed
/// values throw std::invalid_argument with the line number.
void apply_config_text(ExperimentConfig &cfg, std::istream &in);
ExperimentConfig load_config(const std::string &path);
void set_config_value(ExperimentConfig &cfg, const std::string &key, const std::string &value);
std::string to_config_text(const ExperimentConfig &cfg);

struct Position
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    bool operator==(const Position &) const = default;
};

struct Topology
{
    std::vector<Position> orus;
    std::vector<Position> uavs;
    bool operator==(const Topology &) const = default;
};

enum class StreamPurpose : std::uint32_t
{
    topology = 1,
    shadowing,
    scattering,
    pilot_noise,
    pilot_assignment,
    rician_k,
    angular_spread,
    los_state,
};

struct StreamKey
{
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
    StreamPurpose purpose = StreamPurpose::topology;
};

using RandomStream = std::mt19937_64;

/// Seeds a fresh engine from the key fields only, so every (trial, purpose) pair
/// can be generated independently of evaluation order.
RandomStream derive_stream(const StreamKey &key);

Topology build_topology(const ExperimentConfig &cfg, const StreamKey &key);

} // namespace aerocf
