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

#include "aerocf/orchestrator.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace aerocf {

/// Jain index in percent; 100 for an all-zero vector.
double jain_fairness(const std::vector<double> &se);
/// Percent of entries with se >= se_min.
double success_rate(const std::vector<double> &se, double se_min);
/// Smallest entry; throws std::invalid_argument on an empty vector.
double min_se(const std::vector<double> &se);

struct MetricsRecord
{
    std::uint64_t trial = 0;
    SchemeId scheme;
    int K = 0;
    double min_se = 0.0;
    double success_rate = 0.0;  // percent
    double jain_fairness = 0.0; // percent
    double runtime_s = 0.0;
    int ao_iterations = 0;
    std::uint64_t fp_iterations_total = 0;
    std::uint64_t channel_hash = 0;
    bool operator==(const MetricsRecord &) const = default;
};

MetricsRecord make_record(const TrialData &trial, const SchemeOutcome &outcome);

struct TrialFailure
{
    std::uint64_t trial = 0;
    int K = 0;
    std::string reason;
};

struct MonteCarloResult
{
    std::vector<MetricsRecord> records;   // sorted by (K, trial, scheme)
    std::vector<TrialFailure> failures;   // sorted by (K, trial)
    std::vector<MetricsRecord> zero_se;   // records whose Jain index hit the all-zero convention
};

/// Runs cfg.trials trials for every K in `uav_counts` (cfg.num_uavs when empty).
/// All schemes of a trial share one channel ensemble. `threads` <= 0 picks
/// the hardware concurrency.
MonteCarloResult run_monte_carlo(const ExperimentConfig &cfg, const std::vector<SchemeId> &schemes,
                                 const std::vector<int> &uav_counts = {}, int threads = 1);

struct SummaryRow
{
    SchemeId scheme;
    int K = 0;
    std::size_t n = 0;
    double mean_min_se = 0.0, sem_min_se = 0.0;
    double mean_success_rate = 0.0, sem_success_rate = 0.0;
    double mean_jain_fairness = 0.0, sem_jain_fairness = 0.0;
    double mean_runtime_s = 0.0, sem_runtime_s = 0.0;
    double mean_ao_iterations = 0.0;
};

std::vector<SummaryRow> summarize(const std::vector<MetricsRecord> &records);

extern const char *const results_header;

void write_results(const std::vector<MetricsRecord> &records, std::ostream &out);
/// Writes `path` plus `<stem>_summary.csv`. Throws std::runtime_error naming the path.
void write_results(const std::vector<MetricsRecord> &records, const std::string &path);
void write_summary(const std::vector<SummaryRow> &rows, std::ostream &out);
std::vector<MetricsRecord> read_results(std::istream &in);
std::vector<MetricsRecord> read_results(const std::string &path);

/// Companion file names derived from the results path.
std::string summary_path(const std::string &results_path);
std::string metadata_path(const std::string &results_path);

/// Run metadata: configuration, evaluation mode, failures and zero-SE flags.
void write_metadata(const ExperimentConfig &cfg, const std::vector<SchemeId> &schemes,
                    const std::vector<int> &uav_counts, const MonteCarloResult &result, std::ostream &out);

} // namespace aerocf
