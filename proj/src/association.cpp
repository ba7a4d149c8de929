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

#include "aerocf/association.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace aerocf {

namespace {

void tally(AssociationOps *ops, std::uint64_t n)
{
    if (ops)
        ops->count += n;
}

// Indices sorted by descending value, lowest index first on ties.
std::vector<int> descending_order(std::size_t n, const std::function<double(int)> &value, AssociationOps *ops)
{
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::uint64_t comparisons = 0;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        ++comparisons;
        return value(x) > value(y);
    });
    tally(ops, comparisons);
    return order;
}

void check_beta(const Grid<double> &beta, int tau_p)
{
    if (beta.rows() == 0 || beta.cols() == 0)
        throw std::invalid_argument("beta must be a non-empty K x L table.");
    if (tau_p < 1)
        throw std::invalid_argument("tau_p must be at least 1.");
    for (double v : beta.data())
        if (!(v > 0.0))
            throw std::invalid_argument("beta entries must be strictly positive.");
}

} // namespace

AssociationMatrix stage1_uav_centric(const Grid<double> &beta, int tau_p, AssociationOps *ops)
{
    check_beta(beta, tau_p);
    const int K = static_cast<int>(beta.rows());
    const int L = static_cast<int>(beta.cols());
    AssociationMatrix assoc(K, L);

    for (int k = 0; k < K; ++k)
    {
        int best = 0;
        for (int l = 1; l < L; ++l)
            if (beta(k, l) > beta(k, best))
                best = l;
        tally(ops, static_cast<std::uint64_t>(L));
        if (assoc.col_sum(best) < tau_p)
        {
            assoc.set(k, best);
            continue;
        }
        // Strongest O-RU is full: fall back to the next strongest with room.
        const auto order = descending_order(beta.cols(), [&](int l) { return beta(k, l); }, ops);
        bool placed = false;
        for (int l : order)
        {
            tally(ops, 1);
            if (assoc.col_sum(l) < tau_p)
            {
                assoc.set(k, l);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw AssociationInfeasible("UAV " + std::to_string(k) + " cannot be served: all " + std::to_string(L) +
                                        " O-RUs are at capacity " + std::to_string(tau_p) + ".");
    }
    return assoc;
}

void stage2_oru_centric(AssociationMatrix &assoc, const Grid<double> &beta, int tau_p, int n_top,
                        AssociationOps *ops)
{
    check_beta(beta, tau_p);
    const int L = static_cast<int>(beta.cols());
    for (int l = 0; l < L; ++l)
    {
        const int n_assign = std::min(n_top, tau_p - assoc.col_sum(l));
        tally(ops, 1);
        if (n_assign <= 0)
            continue;
        const auto order = descending_order(beta.rows(), [&](int k) { return beta(k, l); }, ops);
        int added = 0;
        for (int k : order)
        {
            if (added == n_assign)
                break;
            tally(ops, 1);
            if (assoc.set(k, l))
                ++added;
        }
    }
}

int stage3_qos_refinement(AssociationMatrix &assoc, const Grid<double> &beta, int tau_p, double se_min,
                          const SeEvaluator &evaluate_se)
{
    check_beta(beta, tau_p);
    const int K = static_cast<int>(beta.rows());
    const int L = static_cast<int>(beta.cols());
    const int attempts = (L + 1) / 2;

    SeVector se = evaluate_se(assoc);
    int evaluations = 1;
    std::vector<int> weak;
    for (int k = 0; k < K; ++k)
        if (se.se[k] < se_min)
            weak.push_back(k);

    for (int k : weak)
    {
        std::vector<int> candidates;
        for (int l : descending_order(beta.cols(), [&](int l) { return beta(k, l); }, nullptr))
            if (!assoc(k, l))
                candidates.push_back(l);

        for (int x = 0; x < attempts && se.se[k] < se_min; ++x)
        {
            if (x >= static_cast<int>(candidates.size()))
                break;
            const int l = candidates[x];
            if (assoc.col_sum(l) >= tau_p)
                continue;
            assoc.set(k, l);
            se = evaluate_se(assoc);
            ++evaluations;
        }
    }
    return evaluations;
}

AssociationMatrix propose_association(const Grid<double> &beta, int tau_p, double se_min, int n_top,
                                      const SeEvaluator &evaluate_se)
{
    AssociationMatrix assoc = stage1_uav_centric(beta, tau_p);
    stage2_oru_centric(assoc, beta, tau_p, n_top);
    stage3_qos_refinement(assoc, beta, tau_p, se_min, evaluate_se);
    return assoc;
}

AssociationMatrix baseline_association(const Grid<double> &beta, int tau_p, int n_top)
{
    AssociationMatrix assoc = stage1_uav_centric(beta, tau_p);
    stage2_oru_centric(assoc, beta, tau_p, n_top);
    return assoc;
}

} // namespace aerocf
