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

#include "mmwsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace
{
    double parse_number(const std::string &s, const std::string &field)
    {
        std::size_t used = 0;
        double x = 0.0;
        try
        {
            x = std::stod(s, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw std::invalid_argument("Field '" + field + "' has non-numeric value '" + s + "'.");
        return x;
    }

    std::string fmt(const char *f, double x)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, x);
        return buf;
    }

    std::string escape_xml(const std::string &s)
    {
        std::string out;
        for (char c : s)
        {
            switch (c)
            {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
            }
        }
        return out;
    }

    const char *const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
}

std::string mmwsim::render_plot_svg(const CsvTable &table, const std::string &x_field, const std::string &y_field,
                                    const std::string &group_field)
{
    const std::size_t xi = table.column(x_field);
    const std::size_t yi = table.column(y_field);
    const bool grouped = !group_field.empty();
    const std::size_t gi = grouped ? table.column(group_field) : 0;
    std::size_t ei = table.header.size();
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == "error")
            ei = i;

    struct Acc
    {
        double sum = 0.0;
        std::size_t n = 0;
    };
    std::vector<std::string> group_order;
    std::map<std::string, std::map<double, Acc>> series;
    for (const auto &row : table.rows)
    {
        if (ei < row.size() && !row[ei].empty())
            continue;
        const std::string g = grouped ? row[gi] : "all";
        const double x = parse_number(row[xi], x_field);
        const double y = parse_number(row[yi], y_field);
        if (!series.count(g))
            group_order.push_back(g);
        auto &acc = series[g][x];
        acc.sum += y;
        ++acc.n;
    }
    if (group_order.empty())
        throw std::invalid_argument("No successful rows to plot.");

    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
    for (const auto &[g, pts] : series)
        for (const auto &[x, acc] : pts)
        {
            const double y = acc.sum / double(acc.n);
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    if (x_hi == x_lo)
    {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo)
    {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double width = 720, height = 480;
    const double left = 80, right = 180, top = 30, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto sy = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" viewBox=\"0 0 720 480\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"480\" fill=\"white\"/>\n";
    s += "<rect x=\"" + fmt("%.2f", left) + "\" y=\"" + fmt("%.2f", top) + "\" width=\"" + fmt("%.2f", pw) +
         "\" height=\"" + fmt("%.2f", ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    const int n_ticks = 5;
    for (int t = 0; t < n_ticks; ++t)
    {
        const double fx = x_lo + (x_hi - x_lo) * t / (n_ticks - 1);
        const double fy = y_lo + (y_hi - y_lo) * t / (n_ticks - 1);
        s += "<line class=\"tick\" x1=\"" + fmt("%.2f", sx(fx)) + "\" y1=\"" + fmt("%.2f", top + ph) + "\" x2=\"" +
             fmt("%.2f", sx(fx)) + "\" y2=\"" + fmt("%.2f", top + ph + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt("%.2f", sx(fx)) + "\" y=\"" + fmt("%.2f", top + ph + 20) +
             "\" text-anchor=\"middle\">" + fmt("%.4g", fx) + "</text>\n";
        s += "<line class=\"tick\" x1=\"" + fmt("%.2f", left - 5) + "\" y1=\"" + fmt("%.2f", sy(fy)) + "\" x2=\"" +
             fmt("%.2f", left) + "\" y2=\"" + fmt("%.2f", sy(fy)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt("%.2f", left - 8) + "\" y=\"" + fmt("%.2f", sy(fy) + 4) + "\" text-anchor=\"end\">" +
             fmt("%.4g", fy) + "</text>\n";
    }
    s += "<text x=\"" + fmt("%.2f", left + pw / 2) + "\" y=\"" + fmt("%.2f", height - 15) +
         "\" text-anchor=\"middle\">" + escape_xml(x_field) + "</text>\n";
    s += "<text x=\"20\" y=\"" + fmt("%.2f", top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         fmt("%.2f", top + ph / 2) + ")\">" + escape_xml(y_field) + "</text>\n";

    for (std::size_t k = 0; k < group_order.size(); ++k)
    {
        const auto &g = group_order[k];
        const char *color = palette[k % (sizeof palette / sizeof palette[0])];
        std::string points;
        for (const auto &[x, acc] : series[g])
        {
            if (!points.empty())
                points += ' ';
            points += fmt("%.2f", sx(x)) + "," + fmt("%.2f", sy(acc.sum / double(acc.n)));
        }
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + points +
             "\"/>\n";

        const double ly = top + 10 + 20.0 * double(k);
        const std::string label = grouped ? group_field + "=" + g : g;
        s += "<g class=\"legend\"><line x1=\"" + fmt("%.2f", left + pw + 15) + "\" y1=\"" + fmt("%.2f", ly) +
             "\" x2=\"" + fmt("%.2f", left + pw + 40) + "\" y2=\"" + fmt("%.2f", ly) + "\" stroke=\"" + color +
             "\" stroke-width=\"2\"/><text x=\"" + fmt("%.2f", left + pw + 45) + "\" y=\"" + fmt("%.2f", ly + 4) +
             "\">" + escape_xml(label) + "</text></g>\n";
    }
    s += "</svg>\n";
    return s;
}

void mmwsim::emit_plot(const CsvTable &table, const std::string &x_field, const std::string &y_field,
                       const std::string &group_field, const std::string &path)
{
    const std::string svg = render_plot_svg(table, x_field, y_field, group_field);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("Cannot open " + path + " for writing.");
    out.write(svg.data(), std::streamsize(svg.size()));
    if (!out)
        throw std::runtime_error("Failed writing " + path + ".");
}

void mmwsim::emit_plot(const std::vector<ResultRecord> &records, const std::string &x_field,
                       const std::string &y_field, const std::string &group_field, const std::string &path)
{
    emit_plot(to_csv_table(records), x_field, y_field, group_field, path);
}
