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

#ifndef MMWSIM_METRICS_HPP
#define MMWSIM_METRICS_HPP

#include "mmwsim/types.hpp"

#include <vector>

namespace mmwsim
{
    struct PowerModel
    {
        double transmit_power = 1.0;            // P_T [W]
        double noise_variance = 1e-10;          // sigma_n^2 [W]
        double per_antenna_circuit_power = 0.1; // P_c [W]
        double amp_inefficiency = 2.0;          // amplifier inefficiency, > 1

        void validate() const;
    };

    struct MetricsResult
    {
        std::vector<double> per_user_ase; // bit/s/Hz
        double sum_ase = 0.0;             // bit/s/Hz
        double asee = 0.0;                // bit/Joule/Hz
    };

    // Thermal noise k_B T0 B F with T0 = 290 K
    double noise_variance_from_bandwidth(double bandwidth_hz, double noise_figure_db);

    // Disturbance covariance seen by user k:
    //   R = sigma^2 D_k^H D_k + P_T / (M K) sum_{l != k} D_k^H H_k Q_l Q_l^H H_k^H D_k
    // Hermitian-symmetrized; throws std::invalid_argument if not positive definite.
    CMatrix disturbance_covariance(int user_index, const std::vector<CMatrix> &channels,
                                   const std::vector<CMatrix> &precoders, const CMatrix &postcoder,
                                   const PowerModel &power, int n_streams, int n_users);

    // Trace of the interference part of the disturbance covariance of user k
    double interference_power(int user_index, const std::vector<CMatrix> &channels,
                              const std::vector<CMatrix> &precoders, const CMatrix &postcoder,
                              const PowerModel &power, int n_streams, int n_users);

    // Per-user log2 det(I + P_T/(K M) R^-1 D^H H Q Q^H H^H D) and their sum. asee is left at 0.
    MetricsResult ase(const std::vector<CMatrix> &channels, const std::vector<CMatrix> &precoders,
                      const std::vector<CMatrix> &postcoders, const PowerModel &power, int n_streams,
                      int n_users);

    // sum_ase / (N_T P_c + eta P_T)
    double asee(double sum_ase, int n_tx_antennas, const PowerModel &power);
}

#endif
