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

#ifndef MMWSIM_CHANNEL_HPP
#define MMWSIM_CHANNEL_HPP

#include "mmwsim/rng.hpp"
#include "mmwsim/types.hpp"

#include <string>
#include <vector>

namespace mmwsim
{
    // Uniform linear array
    struct ArrayGeometry
    {
        int n_elements = 1;
        double spacing_wavelengths = 0.5;

        void validate() const;
    };

    // Log-distance macroscopic attenuation, L_dB(d) = PL0 + 10 n log10(d / d_ref)
    struct PathLossModel
    {
        double intercept_db = 70.0; // PL0 at the reference distance
        double exponent = 3.4;      // n
        double reference_distance_m = 1.0;

        void validate() const;
    };

    // Line-of-sight probability p(d)
    struct LosProbabilityModel
    {
        enum class Kind
        {
            exponential, // 1 for d <= breakpoint, exp(-(d - breakpoint) / decay) beyond
            never,
            always
        };

        Kind kind = Kind::exponential;
        double breakpoint_m = 10.0;
        double decay_m = 60.0;

        double probability(double distance_m) const;
        void validate() const;
    };

    std::string to_string(LosProbabilityModel::Kind kind);
    LosProbabilityModel::Kind parse_los_kind(const std::string &name);

    struct ChannelParams
    {
        int n_clusters = 2;
        int n_rays_per_cluster = 3;
        double gain_variance = 1.0;
        double angle_spread = deg_to_rad(5.0); // Laplacian scale of ray offsets [rad]
        LosProbabilityModel los_probability;
        PathLossModel path_loss;

        void validate() const;
    };

    struct PathComponent
    {
        int cluster_index = 1; // 1-based
        int ray_index = 1;     // 1-based
        cx gain{1.0, 0.0};
        double attenuation = 1.0; // linear L(r)
        double departure_angle = 0.0;
        double arrival_angle = 0.0;
    };

    struct LosDescriptor
    {
        bool present = false;
        double phase = 0.0; // uniform on [0, 2 pi)
        double distance_m = 1.0;
        double attenuation = 1.0;
        double departure_angle = 0.0;
        double arrival_angle = 0.0;
    };

    struct PathSet
    {
        int n_clusters = 0;
        int n_rays_per_cluster = 0;
        std::vector<PathComponent> paths;
        LosDescriptor los;
    };

    struct ChannelRealization
    {
        CMatrix matrix; // N_R x N_T
        PathSet path_set;
        double normalization = 0.0; // gamma
    };

    // Unit-norm ULA response; element m is exp(-j 2 pi s m sin(angle)) / sqrt(N)
    CVector steering_vector(const ArrayGeometry &geometry, double angle);

    double path_loss(double distance_m, const PathLossModel &model);

    // Reflect an angle into [-pi/2, pi/2). Reflection about +-pi/2 preserves sin(angle).
    double wrap_angle(double angle);

    PathSet draw_path_set(const ChannelParams &params, double distance_m, Rng &rng);

    // H = gamma sum_{i,l} alpha sqrt(L) a_r a_t^H + H_LOS, gamma = sqrt(N_R N_T / (N_cl N_ray))
    ChannelRealization assemble_channel(const PathSet &path_set, const ArrayGeometry &tx, const ArrayGeometry &rx);

    // Number of singular values above rel_tol * sigma_max
    int numerical_rank(const CMatrix &m, double rel_tol = 1e-9);
}

#endif
