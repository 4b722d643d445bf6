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

#ifndef MMWSIM_BEAMFORMING_HPP
#define MMWSIM_BEAMFORMING_HPP

#include "mmwsim/channel.hpp"
#include "mmwsim/types.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mmwsim
{
    enum class Scheme
    {
        digital,
        hybrid,
        analog
    };

    std::string to_string(Scheme scheme);
    Scheme parse_scheme(const std::string &name);

    // Precoder Q (N_T x M) and postcoder D (N_R x M) of one user
    struct BeamformerPair
    {
        CMatrix precoder;
        CMatrix postcoder;
        Scheme scheme = Scheme::digital;
    };

    // Constant-modulus RF matrix times baseband matrix
    struct HybridFactors
    {
        CMatrix rf_matrix;       // N x N_rf, entries of modulus 1/sqrt(N)
        CMatrix baseband_matrix; // N_rf x M
        std::vector<double> residual_history;
    };

    struct HybridOptions
    {
        double tol = 1e-6; // relative residual decrease that ends the iteration
        int max_iter = 200;
    };

    // Raised when greedy analog path selection cannot find enough separated paths
    class InsufficientPathsError : public std::invalid_argument
    {
    public:
        InsufficientPathsError(int needed, int survived);
        int needed() const { return needed_; }
        int survived() const { return survived_; }

    private:
        int needed_;
        int survived_;
    };

    // Top-M right/left singular vectors of H as precoder/postcoder
    BeamformerPair digital_svd_pair(const ChannelRealization &channel, int n_streams);

    // Block coordinate descent on || target - RF * BB ||_F.
    //
    // Iteration 1 warm-starts RF with the element-wise phase projection of the target (extra RF
    // columns beyond M are DFT columns) and solves BB by least squares. Every further iteration
    // sweeps all RF entries, setting each to the unit-modulus phase that exactly minimizes the
    // residual with the other entries held fixed, and then re-solves BB by least squares. Both
    // half-steps are exact minimizations over their block, so residual_history never increases.
    HybridFactors hybrid_decompose(const CMatrix &target, int n_rf, const HybridOptions &options = {});

    BeamformerPair hybrid_pair(const ChannelRealization &channel, int n_streams, int n_rf_tx, int n_rf_rx,
                               const HybridOptions &options = {});

    // A path candidate for analog selection; LOS uses cluster_index = ray_index = 0
    struct SteeringPath
    {
        int cluster_index = 0;
        int ray_index = 0;
        double strength = 0.0;
        double departure_angle = 0.0;
        double arrival_angle = 0.0;
        bool is_los = false;
    };

    // All paths ranked by strength, descending. NLOS strength is |alpha|^2 L(r). The LOS term
    // sqrt(N_R N_T L(d)) compares to the NLOS gamma |alpha| sqrt(L) with gamma^2 = N_R N_T / (N_cl N_ray),
    // so its strength in the same units is L(d) N_cl N_ray. Ties go to ascending (cluster, ray).
    std::vector<SteeringPath> rank_paths(const PathSet &path_set);

    // Greedy choice of the M strongest paths whose departure angles and arrival angles are each
    // pairwise at least min_separation apart
    std::vector<SteeringPath> select_separated_paths(const PathSet &path_set, int n_streams, double min_separation);

    BeamformerPair analog_beam_steer(const PathSet &path_set, const ArrayGeometry &tx, const ArrayGeometry &rx,
                                     int n_streams, double min_separation = deg_to_rad(5.0));

    // Scale every column to unit Euclidean norm; throws on a zero column
    CMatrix normalize_columns(const CMatrix &m);
}

#endif
