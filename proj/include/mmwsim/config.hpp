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

#ifndef MMWSIM_CONFIG_HPP
#define MMWSIM_CONFIG_HPP

#include "mmwsim/scenario.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace mmwsim
{
    using ConfigValue = std::variant<std::int64_t, double, bool, std::string>;

    std::string to_string(const ConfigValue &value);

    // One documented scenario key, addressed as "section.key"
    struct ConfigField
    {
        std::string path;
        std::string description;
        std::function<std::optional<ConfigValue>(const ScenarioConfig &)> get; // nullopt when unset
        std::function<void(ScenarioConfig &, const ConfigValue &)> set;
    };

    // Registry of every scenario key in documentation order
    const std::vector<ConfigField> &config_fields();

    const ConfigField *find_config_field(const std::string &path);

    // Throws std::invalid_argument for unknown paths or values of the wrong type
    void set_config_value(ScenarioConfig &config, const std::string &path, const ConfigValue &value);
    std::optional<ConfigValue> get_config_value(const ScenarioConfig &config, const std::string &path);
}

#endif
