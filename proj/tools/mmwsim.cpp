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

// Command-line front end: run | sweep | plot | selftest
//
// Exit codes: 0 success, 1 input error (bad flags, config or files), 2 runtime error.

#include "mmwsim/config_file.hpp"
#include "mmwsim/csv.hpp"
#include "mmwsim/harness.hpp"
#include "mmwsim/plot.hpp"
#include "mmwsim/selftest.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace
{
    struct Invocation
    {
        std::string config_path;
        std::string output_path;
        std::string input_path;
        std::optional<std::uint64_t> seed_override;
        std::optional<int> jobs;
        std::string plot_x, plot_y, plot_group, plot_out;
        bool timing = false;
        int verbosity = 0;
    };

    int resolve_jobs(const Invocation &inv)
    {
        if (inv.jobs)
        {
            if (*inv.jobs < 1)
                throw std::invalid_argument("--jobs must be at least 1.");
            return *inv.jobs;
        }
        if (const char *env = std::getenv("MMWSIM_JOBS"); env && *env)
        {
            std::size_t used = 0;
            int n = 0;
            try
            {
                n = std::stoi(env, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || env[used] != '\0' || n < 1)
                throw std::invalid_argument("MMWSIM_JOBS must be a positive integer.");
            return n;
        }
        return 1;
    }

    std::vector<std::string> lines_of(const std::string &text)
    {
        std::vector<std::string> out;
        std::istringstream is(text);
        for (std::string line; std::getline(is, line);)
            out.push_back(line);
        return out;
    }

    mmwsim::SweepSpec load_spec(const Invocation &inv)
    {
        auto spec = mmwsim::load_config_file(inv.config_path);
        if (inv.seed_override)
            spec.master_seed = *inv.seed_override;
        return spec;
    }

    int cmd_run(const Invocation &inv)
    {
        const auto spec = load_spec(inv);
        for (const auto &line : lines_of(mmwsim::dump_config(spec)))
            std::cout << "# " << line << '\n';

        const auto rec = mmwsim::run_trial(spec.base, 0, 0, spec.master_seed, inv.timing);
        std::cout << "derived_seed=" << rec.derived_seed << '\n';
        if (!rec.error.empty())
        {
            std::cerr << "error: " << rec.error << '\n';
            return 2;
        }
        std::string distances, per_user;
        for (std::size_t k = 0; k < rec.per_user_ase.size(); ++k)
        {
            distances += (k ? ";" : "") + mmwsim::format_float(rec.distances[k]);
            per_user += (k ? ";" : "") + mmwsim::format_float(rec.per_user_ase[k]);
        }
        std::cout << "distance_m=" << distances << '\n';
        std::cout << "per_user_ase=" << per_user << '\n';
        std::cout << "sum_ase_bps_hz=" << mmwsim::format_float(rec.sum_ase) << '\n';
        std::cout << "asee_bpj_hz=" << mmwsim::format_float(rec.asee) << '\n';
        if (rec.wall_time_ms)
            std::cout << "wall_time_ms=" << mmwsim::format_float(*rec.wall_time_ms) << '\n';
        return 0;
    }

    std::string svg_path_for(const std::string &csv_path)
    {
        const auto dot = csv_path.find_last_of('.');
        const auto slash = csv_path.find_last_of('/');
        if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
            return csv_path.substr(0, dot) + ".svg";
        return csv_path + ".svg";
    }

    int cmd_sweep(const Invocation &inv)
    {
        const auto spec = load_spec(inv);
        const bool plotting = !inv.plot_x.empty() || !inv.plot_y.empty();
        if (plotting && (inv.plot_x.empty() || inv.plot_y.empty()))
            throw std::invalid_argument("--plot-x and --plot-y must be given together.");
        if (plotting)
        {
            // Fail on bad field names before spending time on the sweep
            mmwsim::CsvTable probe;
            probe.header = mmwsim::result_columns();
            probe.column(inv.plot_x);
            probe.column(inv.plot_y);
            if (!inv.plot_group.empty())
                probe.column(inv.plot_group);
        }

        mmwsim::SweepOptions opts;
        opts.jobs = resolve_jobs(inv);
        opts.record_timing = inv.timing;
        if (inv.verbosity >= 2)
            opts.progress = [](std::size_t done, std::size_t total)
            { std::cerr << "trial " << done << "/" << total << '\n'; };

        const auto records = mmwsim::run_sweep(spec, opts);

        std::vector<std::string> comments = {" mmwsim sweep results",
                                             " prng=" + std::string(mmwsim::Rng::algorithm_name),
                                             " seed_mixer=splitmix64(master_seed, cell_index, trial_index)",
                                             " effective configuration:"};
        for (const auto &line : lines_of(mmwsim::dump_config(spec)))
            comments.push_back(" " + line);
        mmwsim::write_csv(records, inv.output_path, comments);

        std::size_t errors = 0;
        for (const auto &r : records)
            errors += !r.error.empty();
        if (inv.verbosity >= 1)
            std::cerr << "wrote " << records.size() << " records (" << errors << " error rows) to "
                      << inv.output_path << '\n';

        if (plotting)
        {
            const std::string svg = inv.plot_out.empty() ? svg_path_for(inv.output_path) : inv.plot_out;
            mmwsim::emit_plot(mmwsim::read_csv(inv.output_path), inv.plot_x, inv.plot_y, inv.plot_group, svg);
            if (inv.verbosity >= 1)
                std::cerr << "wrote plot " << svg << '\n';
        }
        return 0;
    }

    int cmd_plot(const Invocation &inv)
    {
        if (inv.plot_x.empty() || inv.plot_y.empty())
            throw std::invalid_argument("plot needs --plot-x and --plot-y.");
        const auto table = mmwsim::read_csv(inv.input_path);
        mmwsim::emit_plot(table, inv.plot_x, inv.plot_y, inv.plot_group, inv.output_path);
        return 0;
    }
}

int main(int argc, char **argv)
{
    Invocation inv;
    CLI::App app{"mmwsim: Monte Carlo link-level simulator for doubly-massive mmWave MIMO downlinks"};
    app.require_subcommand(1);

    // Flags get their own storage per subcommand: CLI11 resets a flag's target when another
    // subcommand that shares it is not invoked
    std::map<const CLI::App *, int> verbosity;
    std::map<const CLI::App *, bool> timing;
    auto add_common = [&](CLI::App *sub) { sub->add_flag("-v", verbosity[sub], "Verbosity (-v, -vv)"); };

    auto *run = app.add_subcommand("run", "Simulate one scenario drop and print its metrics");
    run->add_option("--config", inv.config_path, "TOML configuration file")->required();
    run->add_option("--seed", inv.seed_override, "Override sweep.master_seed");
    run->add_flag("--timing", timing[run], "Report wall-clock time");
    add_common(run);

    auto *sweep = app.add_subcommand("sweep", "Run a seeded parameter sweep and write CSV");
    sweep->add_option("--config", inv.config_path, "TOML configuration file")->required();
    sweep->add_option("--out", inv.output_path, "Output CSV path")->required();
    sweep->add_option("--seed", inv.seed_override, "Override sweep.master_seed");
    sweep->add_option("--jobs", inv.jobs, "Worker threads (overrides MMWSIM_JOBS)");
    sweep->add_option("--plot-x", inv.plot_x, "CSV column for the plot x axis");
    sweep->add_option("--plot-y", inv.plot_y, "CSV column for the plot y axis");
    sweep->add_option("--plot-group", inv.plot_group, "CSV column that separates plot lines");
    sweep->add_option("--plot-out", inv.plot_out, "SVG path (default: CSV path with .svg extension)");
    sweep->add_flag("--timing", timing[sweep], "Fill the wall_time_ms column (output is then not reproducible)");
    add_common(sweep);

    auto *plot = app.add_subcommand("plot", "Render an SVG line plot from an existing results CSV");
    plot->add_option("--in", inv.input_path, "Input CSV path")->required();
    plot->add_option("--out", inv.output_path, "Output SVG path")->required();
    plot->add_option("--plot-x", inv.plot_x, "CSV column for the x axis")->required();
    plot->add_option("--plot-y", inv.plot_y, "CSV column for the y axis")->required();
    plot->add_option("--plot-group", inv.plot_group, "CSV column that separates lines");
    add_common(plot);

    auto *selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");
    add_common(selftest);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (const auto *sub : {run, sweep, plot, selftest})
        if (sub->parsed())
        {
            inv.verbosity = verbosity[sub];
            inv.timing = timing[sub];
        }

    try
    {
        if (run->parsed())
            return cmd_run(inv);
        if (sweep->parsed())
            return cmd_sweep(inv);
        if (plot->parsed())
            return cmd_plot(inv);
        if (selftest->parsed())
            return mmwsim::run_selftest(std::cout) ? 0 : 2;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
