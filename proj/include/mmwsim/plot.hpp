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

#ifndef MMWSIM_PLOT_HPP
#define MMWSIM_PLOT_HPP

#include "mmwsim/csv.hpp"

#include <string>
#include <vector>

namespace mmwsim
{
    // Line plot of the mean of y_field over rows sharing (group, x); one polyline per group.
    // Error rows are skipped. An empty group_field puts all rows in one group.
    std::string render_plot_svg(const CsvTable &table, const std::string &x_field, const std::string &y_field,
                                const std::string &group_field);

    void emit_plot(const CsvTable &table, const std::string &x_field, const std::string &y_field,
                   const std::string &group_field, const std::string &path);
    void emit_plot(const std::vector<ResultRecord> &records, const std::string &x_field, const std::string &y_field,
                   const std::string &group_field, const std::string &path);
}

#endif
