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

#include "mmwsim/scenario.hpp"

#include <cmath>
#include <string>

void mmwsim::ScenarioConfig::validate() const
{
    if (n_users < 1)
        throw std::invalid_argument("Number of users must be at least 1.");
    if (n_streams < 1)
        throw std::invalid_argument("Number of streams must be at least 1.");
    tx_geometry.validate();
    rx_geometry.validate();
    channel_params.validate();
    power.validate();
    if (n_streams > std::min(tx_geometry.n_elements, rx_geometry.n_elements))
        throw std::invalid_argument("Number of streams exceeds min(N_T, N_R).");
    if (n_users * n_streams > tx_geometry.n_elements)
        throw std::invalid_argument("K * M exceeds the number of transmit antennas.");
    if (!(distance_min_m >= 1.0))
        throw std::invalid_argument("Minimum distance must be at least 1 m.");
    if (!(distance_max_m >= distance_min_m))
        throw std::invalid_argument("Maximum distance must not be below the minimum distance.");
    if (fixed_distance_m && !(*fixed_distance_m >= 1.0))
        throw std::invalid_argument("Fixed distance must be at least 1 m.");
    if (hybrid_params.n_rf_tx < 0 || hybrid_params.n_rf_rx < 0)
        throw std::invalid_argument("RF chain counts must be non-negative (0 selects the default).");
    if (effective_n_rf_tx() / n_users < n_streams)
        throw std::invalid_argument("BS RF chains per user must be at least the number of streams.");
    if (effective_n_rf_rx() < n_streams)
        throw std::invalid_argument("Receiver RF chains must be at least the number of streams.");
    if (hybrid_params.max_iter < 1 || !(hybrid_params.tol >= 0.0))
        throw std::invalid_argument("Hybrid iteration settings are invalid.");
    if (!(min_separation >= 0.0))
        throw std::invalid_argument("Minimum separation must be non-negative.");
}

mmwsim::ScenarioUserError::ScenarioUserError(int user_index, const std::string &what)
    : std::invalid_argument("user " + std::to_string(user_index) + ": " + what), user_index_(user_index)
{
}

mmwsim::BeamformerPair mmwsim::build_beamformer(const ChannelRealization &channel, const ScenarioConfig &config)
{
    switch (config.scheme)
    {
    case Scheme::digital:
        return digital_svd_pair(channel, config.n_streams);
    case Scheme::hybrid:
    {
        HybridOptions opts{config.hybrid_params.tol, config.hybrid_params.max_iter};
        return hybrid_pair(channel, config.n_streams, config.effective_n_rf_tx() / config.n_users,
                           config.effective_n_rf_rx(), opts);
    }
    case Scheme::analog:
        return analog_beam_steer(channel.path_set, config.tx_geometry, config.rx_geometry, config.n_streams,
                                 config.min_separation);
    }
    throw std::invalid_argument("Unknown scheme.");
}

mmwsim::ScenarioRealization mmwsim::draw_scenario(const ScenarioConfig &config, Rng &rng)
{
    config.validate();

    ScenarioRealization out;
    const auto k_users = std::size_t(config.n_users);
    out.channels.reserve(k_users);
    out.distances.reserve(k_users);
    out.beamformers.reserve(k_users);

    for (int k = 0; k < config.n_users; ++k)
    {
        const double d = config.fixed_distance_m ? *config.fixed_distance_m
                                                 : rng.uniform(config.distance_min_m, config.distance_max_m);
        auto path_set = draw_path_set(config.channel_params, d, rng);
        out.distances.push_back(d);
        out.channels.push_back(assemble_channel(path_set, config.tx_geometry, config.rx_geometry));
        try
        {
            out.beamformers.push_back(build_beamformer(out.channels.back(), config));
        }
        catch (const std::exception &e)
        {
            throw ScenarioUserError(k, e.what());
        }
    }
    return out;
}

mmwsim::MetricsResult mmwsim::evaluate_scenario(const ScenarioRealization &realization, const ScenarioConfig &config)
{
    const auto k_users = std::size_t(config.n_users);
    if (realization.channels.size() != k_users || realization.beamformers.size() != k_users)
        throw std::invalid_argument("Realization does not match the configured number of users.");

    std::vector<CMatrix> h, q, d;
    h.reserve(k_users);
    q.reserve(k_users);
    d.reserve(k_users);
    for (std::size_t k = 0; k < k_users; ++k)
    {
        h.push_back(realization.channels[k].matrix);
        q.push_back(realization.beamformers[k].precoder);
        d.push_back(realization.beamformers[k].postcoder);
    }
    auto result = ase(h, q, d, config.power, config.n_streams, config.n_users);
    result.asee = asee(result.sum_ase, config.tx_geometry.n_elements, config.power);
    return result;
}

mmwsim::SteeringPath mmwsim::dominant_path(const PathSet &path_set)
{
    auto ranked = rank_paths(path_set);
    if (ranked.empty())
        throw std::invalid_argument("Path set has no paths.");
    return ranked.front();
}
