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

#ifndef MMWSIM_SCENARIO_HPP
#define MMWSIM_SCENARIO_HPP

#include "mmwsim/beamforming.hpp"
#include "mmwsim/channel.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/rng.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace mmwsim
{
    struct HybridParams
    {
        int n_rf_tx = 0; // 0 selects K * M
        int n_rf_rx = 0; // 0 selects M
        double tol = 1e-6;
        int max_iter = 200;
    };

    struct ScenarioConfig
    {
        int n_users = 1;
        int n_streams = 4;
        ArrayGeometry tx_geometry{100, 0.5};
        ArrayGeometry rx_geometry{50, 0.5};
        ChannelParams channel_params;
        PowerModel power;
        Scheme scheme = Scheme::hybrid;
        HybridParams hybrid_params;
        double min_separation = deg_to_rad(5.0); // analog path selection
        double distance_min_m = 10.0;
        double distance_max_m = 100.0;
        std::optional<double> fixed_distance_m;

        void validate() const;

        int effective_n_rf_tx() const { return hybrid_params.n_rf_tx > 0 ? hybrid_params.n_rf_tx : n_users * n_streams; }
        int effective_n_rf_rx() const { return hybrid_params.n_rf_rx > 0 ? hybrid_params.n_rf_rx : n_streams; }
    };

    struct ScenarioRealization
    {
        std::vector<ChannelRealization> channels;
        std::vector<double> distances;
        std::vector<BeamformerPair> beamformers;
    };

    // Failure while building the drop for one user
    class ScenarioUserError : public std::invalid_argument
    {
    public:
        ScenarioUserError(int user_index, const std::string &what);
        int user_index() const { return user_index_; }

    private:
        int user_index_;
    };

    // Beamformer pair of one user under the configured scheme. The BS RF budget n_rf_tx is split
    // evenly (block-diagonally) across users.
    BeamformerPair build_beamformer(const ChannelRealization &channel, const ScenarioConfig &config);

    ScenarioRealization draw_scenario(const ScenarioConfig &config, Rng &rng);

    MetricsResult evaluate_scenario(const ScenarioRealization &realization, const ScenarioConfig &config);

    // Strongest path of a path set under the analog ranking rule
    SteeringPath dominant_path(const PathSet &path_set);
}

#endif
