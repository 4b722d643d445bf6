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

#ifndef MMWSIM_CONFIG_FILE_HPP
#define MMWSIM_CONFIG_FILE_HPP

#include "mmwsim/harness.hpp"

#include <string>
#include <string_view>

namespace mmwsim
{
    // TOML layout:
    //
    //   [scenario] [array] [channel] [power] [hybrid] [analog]   keys of config_fields()
    //   [sweep]    n_trials, master_seed
    //   [[sweep.axis]]  path = "power.transmit_power_w", values = [1.0, 2.0]
    //
    // Every section and key is optional; unknown sections or keys are errors.
    SweepSpec parse_config(std::string_view toml_text, const std::string &source_name = "<config>");
    SweepSpec load_config_file(const std::string &path);

    // Fully resolved configuration as TOML; parse_config(dump_config(s)) reproduces s
    std::string dump_config(const SweepSpec &spec);
}

#endif
