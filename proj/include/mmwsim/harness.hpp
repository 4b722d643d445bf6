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

#ifndef MMWSIM_HARNESS_HPP
#define MMWSIM_HARNESS_HPP

#include "mmwsim/config.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/scenario.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mmwsim
{
    struct SweepAxis
    {
        std::string path; // a key of config_fields()
        std::vector<ConfigValue> values;
    };

    struct SweepSpec
    {
        ScenarioConfig base;
        std::vector<SweepAxis> axes;
        int n_trials = 1;
        std::uint64_t master_seed = 1;

        void validate() const;
    };

    struct ResultRecord
    {
        std::size_t cell_index = 0;
        std::size_t trial_index = 0;
        std::uint64_t derived_seed = 0;
        ScenarioConfig config; // fully resolved configuration of the cell
        std::vector<double> distances;
        std::vector<double> per_user_ase;
        double sum_ase = 0.0;
        double asee = 0.0;
        std::vector<double> dominant_departure_angles; // per user, for post-hoc separation filtering
        std::vector<double> dominant_arrival_angles;
        std::string error; // empty on success
        std::optional<double> wall_time_ms;
    };

    struct SweepOptions
    {
        int jobs = 1;
        bool record_timing = false; // wall times make output non-reproducible, so they are opt-in
        std::function<void(std::size_t done, std::size_t total)> progress;
    };

    std::size_t cell_count(const SweepSpec &spec);

    // Cells enumerate the Cartesian product of the axes with the first axis varying slowest
    ScenarioConfig cell_config(const SweepSpec &spec, std::size_t cell_index);

    // One trial: seeds an Rng with derived_seed, draws and evaluates the scenario. Scenario
    // errors are captured in the record's error field.
    ResultRecord run_trial(const ScenarioConfig &config, std::size_t cell_index, std::size_t trial_index,
                           std::uint64_t master_seed, bool record_timing = false);

    // Records are returned in (cell_index, trial_index) order regardless of jobs
    std::vector<ResultRecord> run_sweep(const SweepSpec &spec, const SweepOptions &options = {});
}

#endif
