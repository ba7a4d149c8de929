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

#include "aerocf/orchestrator.hpp"

#include <chrono>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace aerocf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SeVector se_of(const TrialData &trial, const SinrCoefficients &coef, const PowerVector &p)
{
    return spectral_efficiency(sinr(coef, p), trial.cfg.pilot_len, trial.cfg.coherence_len);
}

AssociationMatrix associate(AssociationScheme scheme, const TrialData &trial, const LinkExpectations &ex,
                            const PowerVector &p)
{
    const ExperimentConfig &cfg = trial.cfg;
    if (scheme == AssociationScheme::baseline)
        return baseline_association(trial.beta, cfg.pilot_len, cfg.n_top);
    return propose_association(trial.beta, cfg.pilot_len, cfg.se_min, cfg.n_top,
                               [&](const AssociationMatrix &a) { return evaluate_association(trial, ex, a, p); });
}

} // namespace

std::string SchemeId::label() const
{
    std::string out = association == AssociationScheme::baseline ? "BA+" : "PA+";
    switch (power)
    {
    case PowerScheme::full:
        return out + "FP";
    case PowerScheme::fixed_point:
        return out + "PP";
    case PowerScheme::reference:
        return out + "TP";
    }
    return out;
}

bool SchemeId::uses_ao() const
{
    return association == AssociationScheme::proposed && power != PowerScheme::full;
}

SchemeId SchemeId::parse(const std::string &label)
{
    for (const SchemeId &s : all_schemes())
        if (s.label() == label)
            return s;
    throw std::invalid_argument("Unknown scheme '" + label + "' (expected e.g. BA+FP, PA+PP, PA+TP).");
}

std::vector<SchemeId> all_schemes()
{
    using A = AssociationScheme;
    using P = PowerScheme;
    return {{A::baseline, P::full},        {A::proposed, P::full},          {A::baseline, P::fixed_point},
            {A::baseline, P::reference},   {A::proposed, P::fixed_point},   {A::proposed, P::reference}};
}

std::uint64_t hash_channels(const ChannelEnsemble &channels)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const ChannelTable &t : channels)
    {
        const auto *bytes = reinterpret_cast<const unsigned char *>(t.data().data());
        const std::size_t n = t.data().size() * sizeof(cplx);
        for (std::size_t i = 0; i < n; ++i)
        {
            h ^= bytes[i];
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

TrialData prepare_trial(const ExperimentConfig &cfg, std::uint64_t trial_index)
{
    cfg.validate();
    TrialData t;
    t.cfg = cfg;
    t.trial_index = trial_index;
    const auto key = [&](StreamPurpose p) { return StreamKey{cfg.master_seed, trial_index, p}; };

    t.topology = build_topology(cfg, key(StreamPurpose::topology));
    t.links = build_link_tables(t.topology, cfg, trial_index);
    t.beta = t.links.beta();
    t.sigma2 = cfg.noise_power_w();

    RandomStream pilot_rng = derive_stream(key(StreamPurpose::pilot_assignment));
    t.pilots = assign_pilots_random(cfg.num_uavs, cfg.pilot_len, cfg.p_max_w(), pilot_rng);

    RandomStream scatter_rng = derive_stream(key(StreamPurpose::scattering));
    t.channels = draw_channels(t.links.stats, cfg.n_channel_realizations, scatter_rng);

    RandomStream noise_rng = derive_stream(key(StreamPurpose::pilot_noise));
    t.estimates = simulate_pilot_and_estimate(t.channels, t.pilots, t.links.stats, t.sigma2, noise_rng);

    t.full_power_expectations =
        compute_link_expectations(t.channels, t.estimates, full_power(cfg.num_uavs, cfg.p_max_w()), t.sigma2);
    t.channel_hash = hash_channels(t.channels);
    return t;
}

PowerControlResult solve_power(PowerScheme scheme, const SinrCoefficients &coef, const ExperimentConfig &cfg)
{
    const double floor = cfg.sinr_min();
    switch (scheme)
    {
    case PowerScheme::fixed_point: {
        PowerControlParams params;
        params.p_max = cfg.p_max_w();
        params.eps_bisect = cfg.eps_bisect;
        params.eps_fp = cfg.eps_fp;
        params.n_max_fp = cfg.n_max_fp;
        params.gamma_floor = floor;
        return bg_fppc(coef, params);
    }
    case PowerScheme::reference:
        return reference_max_min(coef, cfg.p_max_w(), cfg.reference_tol, floor);
    case PowerScheme::full:
        break;
    }
    PowerControlResult res;
    res.p_star = full_power(coef.size(), cfg.p_max_w());
    res.gamma_star = coef.size() > 0 ? min_value(sinr(coef, res.p_star)) : 0.0;
    res.feasible = res.gamma_star >= floor;
    return res;
}

SeVector evaluate_association(const TrialData &trial, const LinkExpectations &ex, const AssociationMatrix &assoc,
                              const PowerVector &p)
{
    return se_of(trial, sinr_coefficients(ex, assoc, trial.beta, trial.sigma2), p);
}

SchemeOutcome alternating_optimize(const TrialData &trial, PowerScheme power_solver)
{
    if (power_solver == PowerScheme::full)
        throw std::invalid_argument("Alternating optimization needs an optimizing power solver.");
    const ExperimentConfig &cfg = trial.cfg;
    const auto start = Clock::now();

    SchemeOutcome best;
    best.scheme = {AssociationScheme::proposed, power_solver};
    AoTrace trace;
    trace.terminated_by = AoTermination::max_iterations;

    PowerVector p = full_power(cfg.num_uavs, cfg.p_max_w());
    double best_objective = -std::numeric_limits<double>::infinity();
    int fp_total = 0;

    for (int it = 0; it < cfg.i_max_ao; ++it)
    {
        // Combiners follow the powers of the previous iteration.
        LinkExpectations refreshed;
        if (it > 0)
            refreshed = compute_link_expectations(trial.channels, trial.estimates, p, trial.sigma2);
        const LinkExpectations &ex = it > 0 ? refreshed : trial.full_power_expectations;

        AssociationMatrix assoc = associate(AssociationScheme::proposed, trial, ex, p);
        SinrCoefficients coef = sinr_coefficients(ex, assoc, trial.beta, trial.sigma2);
        PowerControlResult pc = solve_power(power_solver, coef, cfg);
        fp_total += pc.fp_iterations;
        p = pc.p_star;
        SeVector se = se_of(trial, coef, p);
        const double objective = min_value(se.se);

        const double improvement = objective - best_objective;
        AoIteration rec{assoc, p, objective, pc.gamma_star, std::max(objective, best_objective)};
        trace.iterations.push_back(rec);
        if (objective > best_objective)
        {
            best_objective = objective;
            trace.best_index = it;
            best.assoc = std::move(assoc);
            best.p = p;
            best.se = std::move(se);
            best.coef = std::move(coef);
            best.qos_feasible = pc.feasible;
        }
        if (it > 0 && improvement < cfg.eps_ao)
        {
            trace.terminated_by = AoTermination::tolerance;
            break;
        }
    }
    best.trace = std::move(trace);
    best.fp_iterations = fp_total;
    best.runtime_s = seconds_since(start);
    return best;
}

SchemeOutcome run_scheme(const SchemeId &scheme, const TrialData &trial)
{
    if (scheme.uses_ao())
        return alternating_optimize(trial, scheme.power);

    const ExperimentConfig &cfg = trial.cfg;
    const auto start = Clock::now();
    const PowerVector p_full = full_power(cfg.num_uavs, cfg.p_max_w());
    const LinkExpectations &ex = trial.full_power_expectations;

    SchemeOutcome out;
    out.scheme = scheme;
    out.assoc = associate(scheme.association, trial, ex, p_full);
    out.coef = sinr_coefficients(ex, out.assoc, trial.beta, trial.sigma2);
    const PowerControlResult pc = solve_power(scheme.power, out.coef, cfg);
    out.p = pc.p_star;
    out.fp_iterations = pc.fp_iterations;
    out.qos_feasible = pc.feasible;
    out.se = se_of(trial, out.coef, out.p);
    out.runtime_s = seconds_since(start);

    const double objective = min_value(out.se.se);
    out.trace.iterations.push_back({out.assoc, out.p, objective, pc.gamma_star, objective});
    out.trace.terminated_by = AoTermination::single_pass;
    return out;
}

} // namespace aerocf
