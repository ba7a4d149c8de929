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

#include "aerocf/association.hpp"
#include "aerocf/pilots.hpp"
#include "aerocf/powerctl.hpp"
#include "aerocf/propagation.hpp"
#include "aerocf/receiver.hpp"
#include "aerocf/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aerocf {

enum class AssociationScheme
{
    baseline, // BA: UAV- and O-RU-centric stages only
    proposed, // PA: adds QoS-driven refinement
};

enum class PowerScheme
{
    full,      // FP
    fixed_point, // PP: bisection-guided fixed point
    reference, // TP: exact max-min reference solver
};

struct SchemeId
{
    AssociationScheme association = AssociationScheme::baseline;
    PowerScheme power = PowerScheme::full;

    /// "BA+FP", "PA+PP", ...
    std::string label() const;
    /// Alternating optimization applies to PA with optimized power only.
    bool uses_ao() const;
    static SchemeId parse(const std::string &label);
    bool operator==(const SchemeId &) const = default;
};

/// The six benchmark combinations in reporting order.
std::vector<SchemeId> all_schemes();

/// Everything shared by the schemes of one Monte Carlo trial.
struct TrialData
{
    ExperimentConfig cfg;
    std::uint64_t trial_index = 0;
    Topology topology;
    LinkTables links;
    Grid<double> beta;
    PilotAssignment pilots;
    ChannelEnsemble channels;
    EstimationResult estimates;
    double sigma2 = 0.0;
    LinkExpectations full_power_expectations;
    std::uint64_t channel_hash = 0;
};

TrialData prepare_trial(const ExperimentConfig &cfg, std::uint64_t trial_index);

/// FNV-1a over the raw bytes of every channel realization.
std::uint64_t hash_channels(const ChannelEnsemble &channels);

struct AoIteration
{
    AssociationMatrix assoc;
    PowerVector p;
    double objective = 0.0; // min SE after the power step
    double gamma_star = 0.0;
    double best_so_far = 0.0;
};

enum class AoTermination
{
    single_pass, // scheme without alternation
    tolerance,
    max_iterations,
};

struct AoTrace
{
    std::vector<AoIteration> iterations;
    AoTermination terminated_by = AoTermination::single_pass;
    int best_index = 0;
};

struct SchemeOutcome
{
    SchemeId scheme;
    AssociationMatrix assoc;
    PowerVector p;
    SeVector se;
    SinrCoefficients coef; // model the reported SE was evaluated with
    AoTrace trace;
    int fp_iterations = 0;
    bool qos_feasible = false; // power step met the SE floor (always false for FP below the floor)
    double runtime_s = 0.0;
};

/// Solves the power step for one coefficient set with the requested solver.
PowerControlResult solve_power(PowerScheme scheme, const SinrCoefficients &coef, const ExperimentConfig &cfg);

/// Per-UAV SE for an association under fixed powers and expectations.
SeVector evaluate_association(const TrialData &trial, const LinkExpectations &ex, const AssociationMatrix &assoc,
                              const PowerVector &p);

SchemeOutcome alternating_optimize(const TrialData &trial, PowerScheme power_solver);

SchemeOutcome run_scheme(const SchemeId &scheme, const TrialData &trial);

} // namespace aerocf
