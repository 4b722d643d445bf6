// SPDX-License-Identifier: Apache-2.0
//
// mmwsim: link-level Monte Carlo simulator for doubly-massive mmWave MIMO
// Copyright (C) 2026 The mmwsim Authors
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

#include "mmwsim/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

void mmwsim::SweepSpec::validate() const
{
    if (n_trials < 1)
        throw std::invalid_argument("Sweep needs at least one trial.");
    for (const auto &axis : axes)
    {
        if (!find_config_field(axis.path))
            throw std::invalid_argument("Sweep axis names unknown configuration key '" + axis.path + "'.");
        if (axis.values.empty())
            throw std::invalid_argument("Sweep axis '" + axis.path + "' has no values.");
        for (const auto &v : axis.values)
        {
            ScenarioConfig probe = base;
            set_config_value(probe, axis.path, v);
        }
    }
}

std::size_t mmwsim::cell_count(const SweepSpec &spec)
{
    std::size_t n = 1;
    for (const auto &axis : spec.axes)
        n *= axis.values.size();
    return n;
}

mmwsim::ScenarioConfig mmwsim::cell_config(const SweepSpec &spec, std::size_t cell_index)
{
    if (cell_index >= cell_count(spec))
        throw std::invalid_argument("Cell index out of range.");
    ScenarioConfig config = spec.base;
    // Mixed radix decomposition, last axis fastest
    std::size_t rest = cell_index;
    for (std::size_t a = spec.axes.size(); a-- > 0;)
    {
        const auto &axis = spec.axes[a];
        const std::size_t i = rest % axis.values.size();
        rest /= axis.values.size();
        set_config_value(config, axis.path, axis.values[i]);
    }
    return config;
}

mmwsim::ResultRecord mmwsim::run_trial(const ScenarioConfig &config, std::size_t cell_index, std::size_t trial_index,
                                       std::uint64_t master_seed, bool record_timing)
{
    const auto start = std::chrono::steady_clock::now();

    ResultRecord rec;
    rec.cell_index = cell_index;
    rec.trial_index = trial_index;
    rec.derived_seed = derive_seed(master_seed, cell_index, trial_index);
    rec.config = config;
    rec.sum_ase = std::numeric_limits<double>::quiet_NaN();
    rec.asee = std::numeric_limits<double>::quiet_NaN();

    try
    {
        Rng rng(rec.derived_seed);
        const auto realization = draw_scenario(config, rng);
        rec.distances = realization.distances;
        for (const auto &ch : realization.channels)
        {
            const auto dom = dominant_path(ch.path_set);
            rec.dominant_departure_angles.push_back(dom.departure_angle);
            rec.dominant_arrival_angles.push_back(dom.arrival_angle);
        }
        const auto metrics = evaluate_scenario(realization, config);
        rec.per_user_ase = metrics.per_user_ase;
        rec.sum_ase = metrics.sum_ase;
        rec.asee = metrics.asee;
    }
    catch (const std::exception &e)
    {
        rec.error = e.what();
        rec.per_user_ase.clear();
    }

    if (record_timing)
        rec.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<mmwsim::ResultRecord> mmwsim::run_sweep(const SweepSpec &spec, const SweepOptions &options)
{
    spec.validate();
    if (options.jobs < 1)
        throw std::invalid_argument("Number of jobs must be at least 1.");

    const std::size_t n_cells = cell_count(spec);
    const std::size_t n_trials = std::size_t(spec.n_trials);
    const std::size_t total = n_cells * n_trials;

    std::vector<ScenarioConfig> configs;
    configs.reserve(n_cells);
    for (std::size_t c = 0; c < n_cells; ++c)
        configs.push_back(cell_config(spec, c));

    std::vector<ResultRecord> records(total);
    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::mutex progress_mutex;

    auto worker = [&]()
    {
        for (std::size_t i = next++; i < total; i = next++)
        {
            const std::size_t cell = i / n_trials, trial = i % n_trials;
            records[i] = run_trial(configs[cell], cell, trial, spec.master_seed, options.record_timing);
            if (options.progress)
            {
                std::lock_guard lock(progress_mutex);
                options.progress(++done, total);
            }
        }
    };

    const std::size_t n_threads = std::min<std::size_t>(std::size_t(options.jobs), total);
    if (n_threads <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
    }
    return records;
}
