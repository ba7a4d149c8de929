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

#include "aerocf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace aerocf {

const char *const results_header =
    "trial,scheme,K,min_se,success_rate,jain_fairness,runtime_s,ao_iterations,fp_iterations_total,channel_hash";

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string hex64(std::uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

int scheme_rank(const SchemeId &s)
{
    const auto all = all_schemes();
    return static_cast<int>(std::find(all.begin(), all.end(), s) - all.begin());
}

template <class T> T parse_field(const std::string &field, int base = 10)
{
    T v{};
    const char *end = field.data() + field.size();
    std::from_chars_result r;
    if constexpr (std::is_floating_point_v<T>)
        r = std::from_chars(field.data(), end, v);
    else
        r = std::from_chars(field.data(), end, v, base);
    if (r.ec != std::errc() || r.ptr != end)
        throw std::invalid_argument("Malformed field '" + field + "'.");
    return v;
}

std::pair<double, double> mean_sem(const std::vector<double> &x)
{
    if (x.empty())
        return {0.0, 0.0};
    double s = 0.0;
    for (double v : x)
        s += v;
    const double mean = s / static_cast<double>(x.size());
    if (x.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    const double n = static_cast<double>(x.size());
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::string with_suffix(const std::string &path, const std::string &suffix)
{
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? path.substr(0, dot) : path) + suffix;
}

} // namespace

double jain_fairness(const std::vector<double> &se)
{
    if (se.empty())
        throw std::invalid_argument("Jain index of an empty vector.");
    double s = 0.0, s2 = 0.0;
    for (double v : se)
    {
        s += v;
        s2 += v * v;
    }
    if (s2 == 0.0)
        return 100.0;
    return 100.0 * s * s / (static_cast<double>(se.size()) * s2);
}

double success_rate(const std::vector<double> &se, double se_min)
{
    if (se.empty())
        throw std::invalid_argument("Success rate of an empty vector.");
    if (se_min < 0.0)
        throw std::invalid_argument("SE threshold must be non-negative.");
    const auto hits = std::count_if(se.begin(), se.end(), [&](double v) { return v >= se_min; });
    return 100.0 * static_cast<double>(hits) / static_cast<double>(se.size());
}

double min_se(const std::vector<double> &se)
{
    if (se.empty())
        throw std::invalid_argument("Minimum of an empty SE vector.");
    return *std::min_element(se.begin(), se.end());
}

MetricsRecord make_record(const TrialData &trial, const SchemeOutcome &outcome)
{
    MetricsRecord r;
    r.trial = trial.trial_index;
    r.scheme = outcome.scheme;
    r.K = trial.cfg.num_uavs;
    r.min_se = min_se(outcome.se.se);
    r.success_rate = success_rate(outcome.se.se, trial.cfg.se_min);
    r.jain_fairness = jain_fairness(outcome.se.se);
    r.runtime_s = outcome.runtime_s;
    r.ao_iterations = outcome.scheme.uses_ao() ? static_cast<int>(outcome.trace.iterations.size()) : 0;
    r.fp_iterations_total = static_cast<std::uint64_t>(outcome.fp_iterations);
    r.channel_hash = trial.channel_hash;
    return r;
}

MonteCarloResult run_monte_carlo(const ExperimentConfig &cfg, const std::vector<SchemeId> &schemes,
                                 const std::vector<int> &uav_counts, int threads)
{
    cfg.validate();
    const std::vector<int> ks = uav_counts.empty() ? std::vector<int>{cfg.num_uavs} : uav_counts;
    for (int k : ks)
    {
        ExperimentConfig c = cfg;
        c.num_uavs = k;
        c.validate();
    }

    struct Task
    {
        int K;
        std::uint64_t trial;
    };
    std::vector<Task> tasks;
    for (int k : ks)
        for (int t = 0; t < cfg.trials; ++t)
            tasks.push_back({k, static_cast<std::uint64_t>(t)});

    if (threads <= 0)
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, static_cast<int>(std::max<std::size_t>(1, tasks.size())));

    MonteCarloResult result;
    std::mutex mu;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
        {
            const Task task = tasks[i];
            std::vector<MetricsRecord> local;
            try
            {
                ExperimentConfig c = cfg;
                c.num_uavs = task.K;
                const TrialData trial = prepare_trial(c, task.trial);
                for (const SchemeId &s : schemes)
                    local.push_back(make_record(trial, run_scheme(s, trial)));
            }
            catch (const std::exception &e)
            {
                std::lock_guard lock(mu);
                result.failures.push_back({task.trial, task.K, e.what()});
                continue;
            }
            std::lock_guard lock(mu);
            result.records.insert(result.records.end(), local.begin(), local.end());
        }
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();

    std::sort(result.records.begin(), result.records.end(), [](const MetricsRecord &a, const MetricsRecord &b) {
        return std::tuple(a.K, a.trial, scheme_rank(a.scheme)) < std::tuple(b.K, b.trial, scheme_rank(b.scheme));
    });
    std::sort(result.failures.begin(), result.failures.end(),
              [](const TrialFailure &a, const TrialFailure &b) { return std::tie(a.K, a.trial) < std::tie(b.K, b.trial); });
    for (const MetricsRecord &r : result.records)
        if (r.min_se == 0.0 && r.jain_fairness == 100.0)
            result.zero_se.push_back(r);
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<MetricsRecord> &records)
{
    std::map<std::pair<int, int>, std::vector<const MetricsRecord *>> groups;
    for (const MetricsRecord &r : records)
        groups[{scheme_rank(r.scheme), r.K}].push_back(&r);

    std::vector<SummaryRow> rows;
    for (const auto &[key, group] : groups)
    {
        auto column = [&](auto field) {
            std::vector<double> v;
            for (const MetricsRecord *r : group)
                v.push_back(static_cast<double>(r->*field));
            return mean_sem(v);
        };
        SummaryRow row;
        row.scheme = group.front()->scheme;
        row.K = key.second;
        row.n = group.size();
        std::tie(row.mean_min_se, row.sem_min_se) = column(&MetricsRecord::min_se);
        std::tie(row.mean_success_rate, row.sem_success_rate) = column(&MetricsRecord::success_rate);
        std::tie(row.mean_jain_fairness, row.sem_jain_fairness) = column(&MetricsRecord::jain_fairness);
        std::tie(row.mean_runtime_s, row.sem_runtime_s) = column(&MetricsRecord::runtime_s);
        row.mean_ao_iterations = column(&MetricsRecord::ao_iterations).first;
        rows.push_back(row);
    }
    return rows;
}

void write_results(const std::vector<MetricsRecord> &records, std::ostream &out)
{
    out << results_header << '\n';
    for (const MetricsRecord &r : records)
        out << r.trial << ',' << r.scheme.label() << ',' << r.K << ',' << num(r.min_se) << ','
            << num(r.success_rate) << ',' << num(r.jain_fairness) << ',' << num(r.runtime_s) << ','
            << r.ao_iterations << ',' << r.fp_iterations_total << ',' << hex64(r.channel_hash) << '\n';
}

void write_summary(const std::vector<SummaryRow> &rows, std::ostream &out)
{
    out << "scheme,K,n,mean_min_se,sem_min_se,mean_success_rate,sem_success_rate,mean_jain_fairness,"
           "sem_jain_fairness,mean_runtime_s,sem_runtime_s,mean_ao_iterations\n";
    for (const SummaryRow &r : rows)
        out << r.scheme.label() << ',' << r.K << ',' << r.n << ',' << num(r.mean_min_se) << ','
            << num(r.sem_min_se) << ',' << num(r.mean_success_rate) << ',' << num(r.sem_success_rate) << ','
            << num(r.mean_jain_fairness) << ',' << num(r.sem_jain_fairness) << ',' << num(r.mean_runtime_s)
            << ',' << num(r.sem_runtime_s) << ',' << num(r.mean_ao_iterations) << '\n';
}

std::string summary_path(const std::string &results_path)
{
    return with_suffix(results_path, "_summary.csv");
}

std::string metadata_path(const std::string &results_path)
{
    return with_suffix(results_path, "_meta.txt");
}

void write_results(const std::vector<MetricsRecord> &records, const std::string &path)
{
    auto write_file = [](const std::string &p, auto &&body) {
        std::ofstream f(p);
        if (!f)
            throw std::runtime_error("Cannot open '" + p + "' for writing.");
        body(f);
        f.flush();
        if (!f)
            throw std::runtime_error("Write to '" + p + "' failed.");
    };
    write_file(path, [&](std::ostream &o) { write_results(records, o); });
    write_file(summary_path(path), [&](std::ostream &o) { write_summary(summarize(records), o); });
}

std::vector<MetricsRecord> read_results(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != results_header)
        throw std::invalid_argument("Results file lacks the expected header.");
    std::vector<MetricsRecord> out;
    int line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            f.push_back(cell);
        if (f.size() != 10)
            throw std::invalid_argument("Line " + std::to_string(line_no) + ": expected 10 fields.");
        try
        {
            MetricsRecord r;
            r.trial = parse_field<std::uint64_t>(f[0]);
            r.scheme = SchemeId::parse(f[1]);
            r.K = parse_field<int>(f[2]);
            r.min_se = parse_field<double>(f[3]);
            r.success_rate = parse_field<double>(f[4]);
            r.jain_fairness = parse_field<double>(f[5]);
            r.runtime_s = parse_field<double>(f[6]);
            r.ao_iterations = parse_field<int>(f[7]);
            r.fp_iterations_total = parse_field<std::uint64_t>(f[8]);
            r.channel_hash = parse_field<std::uint64_t>(f[9], 16);
            out.push_back(r);
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument("Line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<MetricsRecord> read_results(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("Cannot open '" + path + "' for reading.");
    try
    {
        return read_results(f);
    }
    catch (const std::invalid_argument &e)
    {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_metadata(const ExperimentConfig &cfg, const std::vector<SchemeId> &schemes,
                    const std::vector<int> &uav_counts, const MonteCarloResult &result, std::ostream &out)
{
    out << "# evaluation: paired (all schemes of a trial share one channel ensemble)\n";
    out << "# schemes:";
    for (const SchemeId &s : schemes)
        out << ' ' << s.label();
    out << "\n# uav_counts:";
    for (int k : uav_counts)
        out << ' ' << k;
    out << "\n# records: " << result.records.size() << "\n# failures: " << result.failures.size() << '\n';
    for (const TrialFailure &f : result.failures)
        out << "# failure K=" << f.K << " trial=" << f.trial << ": " << f.reason << '\n';
    out << "# zero_se_jain_flags: " << result.zero_se.size() << '\n';
    for (const MetricsRecord &r : result.zero_se)
        out << "# zero_se K=" << r.K << " trial=" << r.trial << " scheme=" << r.scheme.label() << '\n';
    out << to_config_text(cfg);
}

} // namespace aerocf
