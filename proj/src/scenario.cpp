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

#include "aerocf/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <variant>

namespace aerocf {

namespace {

using Field = std::variant<double ExperimentConfig::*, int ExperimentConfig::*,
                           std::uint64_t ExperimentConfig::*>;

const std::vector<std::pair<std::string_view, Field>> &config_fields()
{
    static const std::vector<std::pair<std::string_view, Field>> fields = {
        {"area_side_m", &ExperimentConfig::area_side_m},
        {"num_orus", &ExperimentConfig::num_orus},
        {"antennas_per_oru", &ExperimentConfig::antennas_per_oru},
        {"num_uavs", &ExperimentConfig::num_uavs},
        {"uav_alt_min_m", &ExperimentConfig::uav_alt_min_m},
        {"uav_alt_max_m", &ExperimentConfig::uav_alt_max_m},
        {"oru_height_m", &ExperimentConfig::oru_height_m},
        {"carrier_freq_ghz", &ExperimentConfig::carrier_freq_ghz},
        {"coherence_len", &ExperimentConfig::coherence_len},
        {"pilot_len", &ExperimentConfig::pilot_len},
        {"rician_k_min_db", &ExperimentConfig::rician_k_min_db},
        {"rician_k_max_db", &ExperimentConfig::rician_k_max_db},
        {"shadow_sigma_los_db", &ExperimentConfig::shadow_sigma_los_db},
        {"shadow_sigma_nlos_db", &ExperimentConfig::shadow_sigma_nlos_db},
        {"angular_spread_min_deg", &ExperimentConfig::angular_spread_min_deg},
        {"angular_spread_max_deg", &ExperimentConfig::angular_spread_max_deg},
        {"angular_spread_mode_deg", &ExperimentConfig::angular_spread_mode_deg},
        {"array_azimuth_deg", &ExperimentConfig::array_azimuth_deg},
        {"p_max_dbm", &ExperimentConfig::p_max_dbm},
        {"noise_psd_dbm_hz", &ExperimentConfig::noise_psd_dbm_hz},
        {"noise_figure_db", &ExperimentConfig::noise_figure_db},
        {"bandwidth_hz", &ExperimentConfig::bandwidth_hz},
        {"se_min", &ExperimentConfig::se_min},
        {"n_top", &ExperimentConfig::n_top},
        {"eps_ao", &ExperimentConfig::eps_ao},
        {"i_max_ao", &ExperimentConfig::i_max_ao},
        {"eps_bisect", &ExperimentConfig::eps_bisect},
        {"eps_fp", &ExperimentConfig::eps_fp},
        {"n_max_fp", &ExperimentConfig::n_max_fp},
        {"reference_tol", &ExperimentConfig::reference_tol},
        {"n_channel_realizations", &ExperimentConfig::n_channel_realizations},
        {"trials", &ExperimentConfig::trials},
        {"master_seed", &ExperimentConfig::master_seed},
    };
    return fields;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string &key, const std::string &text)
{
    T value{};
    const char *begin = text.data();
    const char *end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("Invalid value '" + text + "' for key '" + key + "'.");
    return value;
}

void require(bool cond, const char *message)
{
    if (!cond)
        throw std::invalid_argument(message);
}

} // namespace

void ExperimentConfig::validate() const
{
    require(area_side_m > 0.0 && std::isfinite(area_side_m), "area_side_m must be positive.");
    require(num_orus >= 1, "num_orus must be at least 1.");
    require(antennas_per_oru >= 1, "antennas_per_oru must be at least 1.");
    require(num_uavs >= 1, "num_uavs must be at least 1.");
    require(uav_alt_min_m > 22.5 && uav_alt_max_m <= 300.0 && uav_alt_min_m <= uav_alt_max_m,
            "UAV altitude range must lie within (22.5, 300] m.");
    require(oru_height_m >= 0.0, "oru_height_m cannot be negative.");
    require(carrier_freq_ghz > 0.0, "carrier_freq_ghz must be positive.");
    require(pilot_len >= 1 && coherence_len >= 1, "pilot_len and coherence_len must be positive.");
    require(pilot_len < coherence_len, "pilot_len must be smaller than coherence_len.");
    require(static_cast<long long>(num_uavs) <= static_cast<long long>(num_orus) * pilot_len,
            "num_uavs exceeds the association capacity num_orus * pilot_len.");
    require(rician_k_min_db <= rician_k_max_db, "Rician K range is inverted.");
    require(shadow_sigma_los_db >= 0.0 && shadow_sigma_nlos_db >= 0.0, "Shadowing sigma cannot be negative.");
    require(angular_spread_min_deg > 0.0 && angular_spread_min_deg <= angular_spread_mode_deg &&
                angular_spread_mode_deg <= angular_spread_max_deg,
            "Angular spread must satisfy 0 < min <= mode <= max.");
    require(std::isfinite(p_max_dbm), "p_max_dbm must be finite.");
    require(std::isfinite(noise_psd_dbm_hz) && std::isfinite(noise_figure_db), "Noise parameters must be finite.");
    require(bandwidth_hz > 0.0, "bandwidth_hz must be positive.");
    require(se_min >= 0.0, "se_min cannot be negative.");
    require(n_top >= 1, "n_top must be at least 1.");
    require(eps_ao >= 0.0 && i_max_ao >= 1, "AO tolerance/iteration limit invalid.");
    require(eps_bisect > 0.0 && eps_fp > 0.0 && n_max_fp >= 1, "Power-control tolerances must be positive.");
    require(reference_tol > 0.0, "reference_tol must be positive.");
    require(n_channel_realizations >= 1, "n_channel_realizations must be at least 1.");
    require(trials >= 1, "trials must be at least 1.");
}

double ExperimentConfig::p_max_w() const { return std::pow(10.0, (p_max_dbm - 30.0) / 10.0); }

double ExperimentConfig::noise_power_w() const
{
    const double dbm = noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double ExperimentConfig::prelog() const
{
    return 1.0 - static_cast<double>(pilot_len) / static_cast<double>(coherence_len);
}

double ExperimentConfig::sinr_min() const { return std::exp2(se_min / prelog()) - 1.0; }

ExperimentConfig desk_scale(ExperimentConfig base)
{
    base.num_orus = 25;
    base.antennas_per_oru = 2;
    base.pilot_len = 5;
    base.trials = 50;
    return base;
}

void set_config_value(ExperimentConfig &cfg, const std::string &key, const std::string &value)
{
    for (const auto &[name, field] : config_fields())
    {
        if (name != key)
            continue;
        std::visit(
            [&](auto member) {
                using T = std::remove_reference_t<decltype(cfg.*member)>;
                cfg.*member = parse_number<T>(key, value);
            },
            field);
        return;
    }
    throw std::invalid_argument("Unknown configuration key '" + key + "'.");
}

void apply_config_text(ExperimentConfig &cfg, std::istream &in)
{
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("Line " + std::to_string(line_no) + ": expected 'key = value'.");
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        try
        {
            set_config_value(cfg, key, value);
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument("Line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("Cannot open configuration file '" + path + "'.");
    ExperimentConfig cfg;
    apply_config_text(cfg, in);
    return cfg;
}

std::string to_config_text(const ExperimentConfig &cfg)
{
    std::ostringstream out;
    out.precision(17);
    for (const auto &[name, field] : config_fields())
        std::visit([&](auto member) { out << name << " = " << cfg.*member << '\n'; }, field);
    return out.str();
}

RandomStream derive_stream(const StreamKey &key)
{
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(key.master_seed), hi(key.master_seed), lo(key.trial_index),
                      hi(key.trial_index), static_cast<std::uint32_t>(key.purpose), 0x43465541u};
    return RandomStream(seq);
}

Topology build_topology(const ExperimentConfig &cfg, const StreamKey &key)
{
    if (key.purpose != StreamPurpose::topology)
        throw std::invalid_argument("build_topology requires a topology stream key.");
    if (!(cfg.area_side_m > 0.0))
        throw std::invalid_argument("area_side_m must be positive.");
    if (cfg.num_orus < 1 || cfg.num_uavs < 1)
        throw std::invalid_argument("Topology needs at least one O-RU and one UAV.");
    if (!(cfg.uav_alt_min_m <= cfg.uav_alt_max_m))
        throw std::invalid_argument("UAV altitude range is inverted.");

    RandomStream rng = derive_stream(key);
    std::uniform_real_distribution<double> horizontal(0.0, cfg.area_side_m);
    std::uniform_real_distribution<double> altitude(cfg.uav_alt_min_m, cfg.uav_alt_max_m);

    // O-RUs first so UAV positions for a smaller K are a prefix of a larger K.
    Topology topo;
    topo.orus.reserve(static_cast<std::size_t>(cfg.num_orus));
    for (int l = 0; l < cfg.num_orus; ++l)
    {
        const double x = horizontal(rng);
        const double y = horizontal(rng);
        topo.orus.push_back({x, y, cfg.oru_height_m});
    }
    topo.uavs.reserve(static_cast<std::size_t>(cfg.num_uavs));
    for (int k = 0; k < cfg.num_uavs; ++k)
    {
        const double x = horizontal(rng);
        const double y = horizontal(rng);
        const double z = altitude(rng);
        topo.uavs.push_back({x, y, z});
    }
    return topo;
}

} // namespace aerocf
