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

#include "aerocf/association_matrix.hpp"
#include "aerocf/grid.hpp"
#include "aerocf/receiver.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace aerocf {

/// Raised when connectivity and per-O-RU capacity cannot both hold (K > L tau_p).
class AssociationInfeasible : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Maps a candidate association to per-UAV spectral efficiencies.
using SeEvaluator = std::function<SeVector(const AssociationMatrix &)>;

/// Elementary-operation tally (comparisons and assignments) for complexity checks.
struct AssociationOps
{
    std::uint64_t count = 0;
};

/// Each UAV in index order joins its strongest O-RU with spare capacity.
AssociationMatrix stage1_uav_centric(const Grid<double> &beta, int tau_p, AssociationOps *ops = nullptr);

/// Each O-RU in index order admits up to min(n_top, spare) of its strongest
/// UAVs that it does not already serve.
void stage2_oru_centric(AssociationMatrix &assoc, const Grid<double> &beta, int tau_p, int n_top,
                        AssociationOps *ops = nullptr);

/// UAVs below se_min after stage 2 try up to ceil(L/2) extra O-RUs in
/// descending beta order; full O-RUs are skipped but use up an attempt.
/// Returns the number of SE re-evaluations performed.
int stage3_qos_refinement(AssociationMatrix &assoc, const Grid<double> &beta, int tau_p, double se_min,
                          const SeEvaluator &evaluate_se);

AssociationMatrix propose_association(const Grid<double> &beta, int tau_p, double se_min, int n_top,
                                      const SeEvaluator &evaluate_se);

/// Stage 1 + stage 2 only.
AssociationMatrix baseline_association(const Grid<double> &beta, int tau_p, int n_top);

} // namespace aerocf
