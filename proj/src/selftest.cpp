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

#include "mmwsim/selftest.hpp"

#include "mmwsim/beamforming.hpp"
#include "mmwsim/channel.hpp"
#include "mmwsim/config_file.hpp"
#include "mmwsim/csv.hpp"
#include "mmwsim/harness.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/scenario.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace
{
    using namespace mmwsim;

    bool steering_unit_norm()
    {
        Rng rng(11);
        for (int t = 0; t < 200; ++t)
        {
            ArrayGeometry g{1 + int(rng.next_u64() % 300), 0.5};
            double angle = rng.uniform(-4.0, 4.0);
            if (std::abs(steering_vector(g, angle).norm() - 1.0) > 1e-12)
                return false;
        }
        return true;
    }

    bool steering_orthogonality()
    {
        const double p = 0.3, q = std::asin(std::sin(p) + 0.1);
        double prev = 2.0;
        for (int n : {16, 64, 256, 1024})
        {
            ArrayGeometry g{n, 0.5};
            double c = std::abs(steering_vector(g, p).dot(steering_vector(g, q)));
            if (!(c < prev))
                return false;
            prev = c;
        }
        return prev < 0.05;
    }

    bool rank_bound()
    {
        Rng rng(12);
        ChannelParams params;
        params.los_probability.kind = LosProbabilityModel::Kind::always;
        for (int t = 0; t < 20; ++t)
        {
            params.n_clusters = 1 + int(rng.next_u64() % 4);
            params.n_rays_per_cluster = 1 + int(rng.next_u64() % 4);
            auto ps = draw_path_set(params, 30.0, rng);
            auto h = assemble_channel(ps, {64, 0.5}, {32, 0.5});
            if (numerical_rank(h.matrix) > params.n_clusters * params.n_rays_per_cluster + 1)
                return false;
        }
        return true;
    }

    bool power_normalization()
    {
        Rng rng(13);
        ChannelParams params;
        params.los_probability.kind = LosProbabilityModel::Kind::never;
        params.path_loss.intercept_db = 0.0;
        params.path_loss.exponent = 0.0;
        const int n_t = 16, n_r = 8, draws = 10000;
        double acc = 0.0;
        for (int t = 0; t < draws; ++t)
            acc += assemble_channel(draw_path_set(params, 10.0, rng), {n_t, 0.5}, {n_r, 0.5}).matrix.squaredNorm();
        return std::abs(acc / draws / double(n_t * n_r) - 1.0) < 0.02;
    }

    bool beamformer_columns()
    {
        Rng rng(14);
        ScenarioConfig cfg;
        cfg.tx_geometry = {32, 0.5};
        cfg.rx_geometry = {16, 0.5};
        cfg.n_streams = 2;
        cfg.fixed_distance_m = 30.0;
        cfg.channel_params.n_clusters = 4;
        cfg.channel_params.n_rays_per_cluster = 2;
        for (Scheme s : {Scheme::digital, Scheme::hybrid, Scheme::analog})
        {
            cfg.scheme = s;
            for (int t = 0; t < 10; ++t)
            {
                ScenarioRealization real;
                try
                {
                    real = draw_scenario(cfg, rng);
                }
                catch (const ScenarioUserError &)
                {
                    continue;
                }
                for (const auto &bf : real.beamformers)
                    for (const CMatrix *m : {&bf.precoder, &bf.postcoder})
                        for (Eigen::Index j = 0; j < m->cols(); ++j)
                        {
                            if (std::abs(m->col(j).norm() - 1.0) > 1e-9)
                                return false;
                            if (s == Scheme::analog)
                                for (Eigen::Index i = 0; i < m->rows(); ++i)
                                    if (std::abs(std::abs((*m)(i, j)) - 1.0 / std::sqrt(double(m->rows()))) > 1e-9)
                                        return false;
                        }
            }
        }
        return true;
    }

    bool hybrid_monotone()
    {
        Rng rng(15);
        for (int t = 0; t < 10; ++t)
        {
            CMatrix target = CMatrix::Random(24, 3);
            target = normalize_columns(target);
            auto f = hybrid_decompose(target, 4);
            for (std::size_t i = 1; i < f.residual_history.size(); ++i)
                if (f.residual_history[i] > f.residual_history[i - 1])
                    return false;
        }
        return true;
    }

    bool metrics_consistency()
    {
        Rng rng(16);
        ScenarioConfig cfg;
        cfg.tx_geometry = {32, 0.5};
        cfg.rx_geometry = {8, 0.5};
        cfg.n_users = 3;
        cfg.n_streams = 2;
        cfg.scheme = Scheme::digital;
        for (int t = 0; t < 10; ++t)
        {
            auto real = draw_scenario(cfg, rng);
            auto m = evaluate_scenario(real, cfg);
            double s = 0.0;
            for (double v : m.per_user_ase)
            {
                if (v < 0.0)
                    return false;
                s += v;
            }
            if (std::abs(s - m.sum_ase) > 1e-9)
                return false;
        }
        return true;
    }

    bool sweep_reproducible()
    {
        SweepSpec spec;
        spec.base.tx_geometry = {16, 0.5};
        spec.base.rx_geometry = {8, 0.5};
        spec.base.n_streams = 2;
        spec.n_trials = 3;
        spec.master_seed = 99;
        spec.axes.push_back({"power.transmit_power_w", {ConfigValue(1.0), ConfigValue(2.0)}});
        SweepOptions serial, parallel;
        parallel.jobs = 4;
        return serialize_csv(to_csv_table(run_sweep(spec, serial))) ==
               serialize_csv(to_csv_table(run_sweep(spec, parallel)));
    }

    bool config_round_trip()
    {
        SweepSpec spec;
        spec.base.fixed_distance_m = 42.0;
        spec.base.scheme = Scheme::analog;
        spec.axes.push_back({"scenario.n_streams", {ConfigValue(std::int64_t(1)), ConfigValue(std::int64_t(2))}});
        const auto text = dump_config(spec);
        return dump_config(parse_config(text)) == text;
    }
}

bool mmwsim::run_selftest(std::ostream &out)
{
    const std::vector<std::pair<std::string, std::function<bool()>>> checks = {
        {"channel: steering vectors have unit norm", steering_unit_norm},
        {"channel: steering vectors decorrelate with array size", steering_orthogonality},
        {"channel: rank never exceeds N_cl N_ray + 1", rank_bound},
        {"channel: mean squared Frobenius norm equals N_R N_T", power_normalization},
        {"beamforming: unit-norm columns, constant-modulus analog entries", beamformer_columns},
        {"beamforming: hybrid residual history is non-increasing", hybrid_monotone},
        {"metrics: per-user ASE non-negative and sums to total", metrics_consistency},
        {"harness: sweep output independent of parallelism", sweep_reproducible},
        {"config: effective config dump round-trips", config_round_trip},
    };

    bool all = true;
    for (const auto &[name, check] : checks)
    {
        bool ok = false;
        try
        {
            ok = check();
        }
        catch (const std::exception &e)
        {
            out << "  exception: " << e.what() << '\n';
        }
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        all &= ok;
    }
    out << (all ? "selftest passed" : "selftest FAILED") << '\n';
    return all;
}
