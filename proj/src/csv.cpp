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

#include "mmwsim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

const std::vector<std::string> &mmwsim::result_columns()
{
    static const std::vector<std::string> columns = {
        "cell_index",      "trial_index",      "derived_seed",     "n_tx",         "n_rx",
        "n_users",         "n_streams",        "scheme",           "n_clusters",   "n_rays",
        "distance_m",      "transmit_power_w", "noise_variance_w", "circuit_power_w", "amp_inefficiency",
        "per_user_ase",    "sum_ase_bps_hz",   "asee_bpj_hz",      "error",        "wall_time_ms"};
    return columns;
}

std::size_t mmwsim::CsvTable::column(const std::string &name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    std::string available;
    for (const auto &h : header)
        available += (available.empty() ? "" : ", ") + h;
    throw std::invalid_argument("Unknown field '" + name + "'; available fields: " + available);
}

std::string mmwsim::format_float(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

namespace
{
    std::string join_floats(const std::vector<double> &xs)
    {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i)
            s += (i ? ";" : "") + mmwsim::format_float(xs[i]);
        return s;
    }

    bool needs_quotes(const std::string &s)
    {
        return s.find_first_of(",\"\n\r") != std::string::npos;
    }

    void write_field(std::string &out, const std::string &s)
    {
        if (!needs_quotes(s))
        {
            out += s;
            return;
        }
        out += '"';
        for (char c : s)
        {
            if (c == '"')
                out += '"';
            out += c;
        }
        out += '"';
    }
}

mmwsim::CsvTable mmwsim::to_csv_table(const std::vector<ResultRecord> &records, const std::vector<std::string> &comments)
{
    CsvTable t;
    t.comments = comments;
    t.header = result_columns();
    t.rows.reserve(records.size());
    for (const auto &r : records)
    {
        const auto &c = r.config;
        const bool ok = r.error.empty();
        std::vector<std::string> row = {
            std::to_string(r.cell_index),
            std::to_string(r.trial_index),
            std::to_string(r.derived_seed),
            std::to_string(c.tx_geometry.n_elements),
            std::to_string(c.rx_geometry.n_elements),
            std::to_string(c.n_users),
            std::to_string(c.n_streams),
            to_string(c.scheme),
            std::to_string(c.channel_params.n_clusters),
            std::to_string(c.channel_params.n_rays_per_cluster),
            join_floats(r.distances),
            format_float(c.power.transmit_power),
            format_float(c.power.noise_variance),
            format_float(c.power.per_antenna_circuit_power),
            format_float(c.power.amp_inefficiency),
            ok ? join_floats(r.per_user_ase) : "",
            ok ? format_float(r.sum_ase) : "",
            ok ? format_float(r.asee) : "",
            r.error,
            r.wall_time_ms ? format_float(*r.wall_time_ms) : ""};
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string mmwsim::serialize_csv(const CsvTable &table)
{
    std::string out;
    for (const auto &c : table.comments)
    {
        if (c.find('\n') != std::string::npos)
            throw std::invalid_argument("CSV comment lines must not contain newlines.");
        out += '#';
        out += c;
        out += '\n';
    }
    auto write_row = [&](const std::vector<std::string> &row)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                out += ',';
            write_field(out, row[i]);
        }
        out += '\n';
    };
    write_row(table.header);
    for (const auto &row : table.rows)
        write_row(row);
    return out;
}

void mmwsim::write_csv(const CsvTable &table, const std::string &path)
{
    if (table.rows.empty())
        throw std::invalid_argument("Refusing to write " + path + ": no records.");
    const std::string text = serialize_csv(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("Cannot open " + path + " for writing.");
    out.write(text.data(), std::streamsize(text.size()));
    out.close();
    if (!out)
        throw std::runtime_error("Failed writing " + path + ".");
}

void mmwsim::write_csv(const std::vector<ResultRecord> &records, const std::string &path,
                       const std::vector<std::string> &comments)
{
    if (records.empty())
        throw std::invalid_argument("Refusing to write " + path + ": no records.");
    write_csv(to_csv_table(records, comments), path);
}

mmwsim::CsvTable mmwsim::parse_csv(const std::string &text)
{
    CsvTable t;
    std::size_t pos = 0;

    // Comment block
    while (pos < text.size() && text[pos] == '#')
    {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos)
            end = text.size();
        t.comments.push_back(text.substr(pos + 1, end - pos - 1));
        pos = end + 1;
    }

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false, field_started = false;
    for (; pos < text.size(); ++pos)
    {
        const char c = text[pos];
        if (in_quotes)
        {
            if (c == '"')
            {
                if (pos + 1 < text.size() && text[pos + 1] == '"')
                {
                    field += '"';
                    ++pos;
                }
                else
                    in_quotes = false;
            }
            else
                field += c;
            continue;
        }
        if (c == '"')
        {
            in_quotes = true;
            field_started = true;
        }
        else if (c == ',')
        {
            row.push_back(std::move(field));
            field.clear();
            field_started = true;
        }
        else if (c == '\n')
        {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            field_started = false;
        }
        else if (c != '\r')
        {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes)
        throw std::invalid_argument("Unterminated quoted CSV field.");
    if (field_started || !field.empty() || !row.empty())
    {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw std::invalid_argument("CSV has no header row.");

    t.header = std::move(rows.front());
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        if (rows[i].size() != t.header.size())
            throw std::invalid_argument("CSV row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                        " fields, expected " + std::to_string(t.header.size()) + ".");
        t.rows.push_back(std::move(rows[i]));
    }
    return t;
}

mmwsim::CsvTable mmwsim::read_csv(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("Cannot open CSV file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse_csv(buf.str());
    }
    catch (const std::invalid_argument &e)
    {
        throw std::invalid_argument(path + ": " + e.what());
    }
}
