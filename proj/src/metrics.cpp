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

#include "mmwsim/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

void mmwsim::PowerModel::validate() const
{
    if (!(transmit_power > 0.0) || !std::isfinite(transmit_power))
        throw std::invalid_argument("Transmit power must be positive.");
    if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
        throw std::invalid_argument("Noise variance must be positive.");
    if (!(per_antenna_circuit_power >= 0.0) || !std::isfinite(per_antenna_circuit_power))
        throw std::invalid_argument("Per-antenna circuit power must be non-negative.");
    if (!(amp_inefficiency > 1.0) || !std::isfinite(amp_inefficiency))
        throw std::invalid_argument("Amplifier inefficiency must be greater than 1.");
}

double mmwsim::noise_variance_from_bandwidth(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("Bandwidth must be positive.");
    constexpr double boltzmann = 1.380649e-23;
    constexpr double t0 = 290.0;
    return boltzmann * t0 * bandwidth_hz * std::pow(10.0, noise_figure_db / 10.0);
}

namespace
{
    void check_dimensions(const std::vector<mmwsim::CMatrix> &channels, const std::vector<mmwsim::CMatrix> &precoders,
                          int n_streams, int n_users)
    {
        if (n_users < 1)
            throw std::invalid_argument("Number of users must be at least 1.");
        if (n_streams < 1)
            throw std::invalid_argument("Number of streams must be at least 1.");
        if (channels.size() != std::size_t(n_users) || precoders.size() != std::size_t(n_users))
            throw std::invalid_argument("Expected " + std::to_string(n_users) + " channels and precoders.");
        for (int k = 0; k < n_users; ++k)
        {
            const auto &h = channels[std::size_t(k)];
            const auto &q = precoders[std::size_t(k)];
            if (h.cols() != q.rows() || q.cols() != n_streams)
                throw std::invalid_argument("Precoder of user " + std::to_string(k) +
                                            " does not match its channel or the stream count.");
            if (h.cols() != channels[0].cols())
                throw std::invalid_argument("All channels must share the transmit array size.");
        }
    }
}

mmwsim::CMatrix mmwsim::disturbance_covariance(int user_index, const std::vector<CMatrix> &channels,
                                               const std::vector<CMatrix> &precoders, const CMatrix &postcoder,
                                               const PowerModel &power, int n_streams, int n_users)
{
    power.validate();
    check_dimensions(channels, precoders, n_streams, n_users);
    if (user_index < 0 || user_index >= n_users)
        throw std::invalid_argument("User index out of range.");
    const auto &h = channels[std::size_t(user_index)];
    if (postcoder.rows() != h.rows() || postcoder.cols() != n_streams)
        throw std::invalid_argument("Postcoder does not match the channel or the stream count.");

    const double per_stream = power.transmit_power / (double(n_streams) * double(n_users));
    const CMatrix dh = postcoder.adjoint() * h;

    CMatrix r = power.noise_variance * (postcoder.adjoint() * postcoder);
    for (int l = 0; l < n_users; ++l)
    {
        if (l == user_index)
            continue;
        const CMatrix g = dh * precoders[std::size_t(l)];
        r.noalias() += per_stream * (g * g.adjoint());
    }
    CMatrix sym = 0.5 * (r + r.adjoint());

    Eigen::LLT<CMatrix> llt(sym);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("Disturbance covariance of user " + std::to_string(user_index) +
                                    " is not positive definite.");
    return sym;
}

double mmwsim::interference_power(int user_index, const std::vector<CMatrix> &channels,
                                  const std::vector<CMatrix> &precoders, const CMatrix &postcoder,
                                  const PowerModel &power, int n_streams, int n_users)
{
    const CMatrix r = disturbance_covariance(user_index, channels, precoders, postcoder, power, n_streams, n_users);
    const CMatrix noise = power.noise_variance * (postcoder.adjoint() * postcoder);
    return (r - noise).trace().real();
}

mmwsim::MetricsResult mmwsim::ase(const std::vector<CMatrix> &channels, const std::vector<CMatrix> &precoders,
                                  const std::vector<CMatrix> &postcoders, const PowerModel &power, int n_streams,
                                  int n_users)
{
    if (postcoders.size() != std::size_t(n_users))
        throw std::invalid_argument("Expected " + std::to_string(n_users) + " postcoders.");

    const double per_stream = power.transmit_power / (double(n_streams) * double(n_users));

    MetricsResult out;
    out.per_user_ase.reserve(std::size_t(n_users));
    for (int k = 0; k < n_users; ++k)
    {
        const auto &d = postcoders[std::size_t(k)];
        const CMatrix r = disturbance_covariance(k, channels, precoders, d, power, n_streams, n_users);

        // det(I + R^-1 S S^H) = det(I + B B^H) with B = L^-1 S and R = L L^H
        Eigen::LLT<CMatrix> chol(r);
        const CMatrix s = std::sqrt(per_stream) * (d.adjoint() * channels[std::size_t(k)] * precoders[std::size_t(k)]);
        const CMatrix b = chol.matrixL().solve(s);
        CMatrix g = CMatrix::Identity(n_streams, n_streams) + b * b.adjoint();
        g = 0.5 * (g + g.adjoint()).eval();

        Eigen::LLT<CMatrix> gl(g);
        if (gl.info() != Eigen::Success)
            throw std::runtime_error("log-det factorization failed for user " + std::to_string(k) + ".");
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < n_streams; ++i)
            logdet += 2.0 * std::log(gl.matrixLLT()(i, i).real());

        const double bits = std::max(0.0, logdet / std::log(2.0));
        out.per_user_ase.push_back(bits);
        out.sum_ase += bits;
    }
    return out;
}

double mmwsim::asee(double sum_ase, int n_tx_antennas, const PowerModel &power)
{
    if (!(sum_ase >= 0.0))
        throw std::invalid_argument("Sum ASE must be non-negative.");
    if (n_tx_antennas < 1)
        throw std::invalid_argument("Number of transmit antennas must be at least 1.");
    const double consumed = double(n_tx_antennas) * power.per_antenna_circuit_power +
                            power.amp_inefficiency * power.transmit_power;
    if (!(consumed > 0.0))
        throw std::invalid_argument("Consumed power must be positive.");
    return sum_ase / consumed;
}
