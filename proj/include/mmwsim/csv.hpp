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

#ifndef MMWSIM_CSV_HPP
#define MMWSIM_CSV_HPP

#include "mmwsim/harness.hpp"

#include <string>
#include <vector>

namespace mmwsim
{
    // Parsed CSV: leading '#' comment lines (without the '#'), header and data rows
    struct CsvTable
    {
        std::vector<std::string> comments;
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        // Index of a column, throws std::invalid_argument listing the available columns
        std::size_t column(const std::string &name) const;
    };

    // Result columns in output order
    const std::vector<std::string> &result_columns();

    // Floats are written with 9 significant digits
    std::string format_float(double x);

    CsvTable to_csv_table(const std::vector<ResultRecord> &records, const std::vector<std::string> &comments = {});

    // UTF-8, LF line endings, RFC 4180 quoting. Throws std::invalid_argument on an empty record
    // list (no file is created) and std::runtime_error on I/O failure.
    void write_csv(const std::vector<ResultRecord> &records, const std::string &path,
                   const std::vector<std::string> &comments = {});
    void write_csv(const CsvTable &table, const std::string &path);

    std::string serialize_csv(const CsvTable &table);
    CsvTable parse_csv(const std::string &text);
    CsvTable read_csv(const std::string &path);
}

#endif
