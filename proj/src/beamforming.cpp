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

#include "mmwsim/beamforming.hpp"

#include <algorithm>
#include <cmath>

std::string mmwsim::to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::digital:
        return "digital";
    case Scheme::hybrid:
        return "hybrid";
    case Scheme::analog:
        return "analog";
    }
    return "digital";
}

mmwsim::Scheme mmwsim::parse_scheme(const std::string &name)
{
    if (name == "digital")
        return Scheme::digital;
    if (name == "hybrid")
        return Scheme::hybrid;
    if (name == "analog")
        return Scheme::analog;
    throw std::invalid_argument("Unknown beamforming scheme '" + name + "' (expected digital, hybrid or analog).");
}

mmwsim::InsufficientPathsError::InsufficientPathsError(int needed, int survived)
    : std::invalid_argument("Insufficient separable paths: " + std::to_string(needed) + " streams requested, only " +
                            std::to_string(survived) + " paths survived the separation filter."),
      needed_(needed), survived_(survived)
{
}

mmwsim::CMatrix mmwsim::normalize_columns(const CMatrix &m)
{
    CMatrix out = m;
    for (Eigen::Index j = 0; j < out.cols(); ++j)
    {
        double n = out.col(j).norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::runtime_error("Cannot normalize a zero or non-finite beamformer column.");
        out.col(j) /= n;
    }
    return out;
}

mmwsim::BeamformerPair mmwsim::digital_svd_pair(const ChannelRealization &channel, int n_streams)
{
    const auto &h = channel.matrix;
    const int max_streams = int(std::min(h.rows(), h.cols()));
    if (n_streams < 1 || n_streams > max_streams)
        throw std::invalid_argument("Number of streams " + std::to_string(n_streams) + " must lie in [1, " +
                                    std::to_string(max_streams) + "].");

    // Singular values come out in descending order
    Eigen::BDCSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);

    BeamformerPair out;
    out.precoder = svd.matrixV().leftCols(n_streams);
    out.postcoder = svd.matrixU().leftCols(n_streams);
    out.scheme = Scheme::digital;
    return out;
}

namespace
{
    double frobenius_residual(const mmwsim::CMatrix &target, const mmwsim::CMatrix &rf, const mmwsim::CMatrix &bb)
    {
        return (target - rf * bb).norm();
    }

    mmwsim::CMatrix least_squares(const mmwsim::CMatrix &rf, const mmwsim::CMatrix &target)
    {
        // Minimum-norm solution, also valid when RF is rank deficient or overcomplete
        return rf.completeOrthogonalDecomposition().solve(target);
    }
}

mmwsim::HybridFactors mmwsim::hybrid_decompose(const CMatrix &target, int n_rf, const HybridOptions &options)
{
    const auto n = target.rows();
    const auto m = target.cols();
    if (n < 1 || m < 1)
        throw std::invalid_argument("Hybrid target must be non-empty.");
    if (n_rf < m)
        throw std::invalid_argument("Number of RF chains (" + std::to_string(n_rf) +
                                    ") must be at least the number of streams (" + std::to_string(m) + ").");
    if (options.max_iter < 1)
        throw std::invalid_argument("Hybrid max_iter must be at least 1.");
    if (!(options.tol >= 0.0))
        throw std::invalid_argument("Hybrid tolerance must be non-negative.");
    for (Eigen::Index j = 0; j < m; ++j)
        if (std::abs(target.col(j).norm() - 1.0) > 1e-6)
            throw std::invalid_argument("Hybrid target columns must have unit norm.");

    const double amp = 1.0 / std::sqrt(double(n));

    HybridFactors out;
    auto &rf = out.rf_matrix;
    auto &bb = out.baseband_matrix;

    rf.resize(n, n_rf);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const cx v = target(i, j);
            rf(i, j) = v == cx(0.0) ? cx(amp) : amp * v / std::abs(v);
        }
    for (Eigen::Index j = m; j < n_rf; ++j)
    {
        const double k = double((j - m) % n);
        for (Eigen::Index i = 0; i < n; ++i)
            rf(i, j) = std::polar(amp, -2.0 * pi * k * double(i) / double(n));
    }

    bb = least_squares(rf, target);
    double residual = frobenius_residual(target, rf, bb);
    out.residual_history.push_back(residual);

    const double exact = 1e-13 * target.norm();
    CMatrix err = target - rf * bb;
    for (int iter = 2; iter <= options.max_iter && residual > exact; ++iter)
    {
        const CMatrix prev_rf = rf, prev_bb = bb;

        // Element-wise exact minimization over the phase of each RF entry
        for (Eigen::Index i = 0; i < n; ++i)
        {
            for (Eigen::Index r = 0; r < n_rf; ++r)
            {
                // Residual row with entry (i, r) removed
                Eigen::RowVectorXcd c = err.row(i) + rf(i, r) * bb.row(r);
                const cx corr = (c * bb.row(r).adjoint())(0, 0);
                if (std::abs(corr) > 0.0)
                    rf(i, r) = amp * corr / std::abs(corr);
                err.row(i) = c - rf(i, r) * bb.row(r);
            }
        }

        bb = least_squares(rf, target);
        err = target - rf * bb;
        const double next = err.norm();

        // At a stationary point rounding can make the re-solve marginally worse; keep the best pair
        if (next > residual)
        {
            rf = prev_rf;
            bb = prev_bb;
            break;
        }
        out.residual_history.push_back(next);
        const double decrease = residual - next;
        const double previous = residual;
        residual = next;
        if (decrease <= options.tol * previous)
            break;
    }
    return out;
}

mmwsim::BeamformerPair mmwsim::hybrid_pair(const ChannelRealization &channel, int n_streams, int n_rf_tx,
                                           int n_rf_rx, const HybridOptions &options)
{
    if (n_rf_tx < n_streams || n_rf_rx < n_streams)
        throw std::invalid_argument("RF chain counts must be at least the number of streams.");

    const auto target = digital_svd_pair(channel, n_streams);
    const auto tx = hybrid_decompose(target.precoder, n_rf_tx, options);
    const auto rx = hybrid_decompose(target.postcoder, n_rf_rx, options);

    BeamformerPair out;
    out.precoder = normalize_columns(tx.rf_matrix * tx.baseband_matrix);
    out.postcoder = normalize_columns(rx.rf_matrix * rx.baseband_matrix);
    out.scheme = Scheme::hybrid;
    return out;
}

std::vector<mmwsim::SteeringPath> mmwsim::rank_paths(const PathSet &path_set)
{
    std::vector<SteeringPath> ranked;
    ranked.reserve(path_set.paths.size() + 1);
    if (path_set.los.present)
    {
        SteeringPath los;
        los.strength = path_set.los.attenuation * double(path_set.n_clusters) * double(path_set.n_rays_per_cluster);
        los.departure_angle = path_set.los.departure_angle;
        los.arrival_angle = path_set.los.arrival_angle;
        los.is_los = true;
        ranked.push_back(los);
    }
    for (const auto &p : path_set.paths)
    {
        SteeringPath s;
        s.cluster_index = p.cluster_index;
        s.ray_index = p.ray_index;
        s.strength = std::norm(p.gain) * p.attenuation;
        s.departure_angle = p.departure_angle;
        s.arrival_angle = p.arrival_angle;
        ranked.push_back(s);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const SteeringPath &a, const SteeringPath &b)
                     {
                         if (a.strength != b.strength)
                             return a.strength > b.strength;
                         if (a.cluster_index != b.cluster_index)
                             return a.cluster_index < b.cluster_index;
                         return a.ray_index < b.ray_index;
                     });
    return ranked;
}

std::vector<mmwsim::SteeringPath> mmwsim::select_separated_paths(const PathSet &path_set, int n_streams,
                                                                 double min_separation)
{
    if (n_streams < 1)
        throw std::invalid_argument("Number of streams must be at least 1.");
    if (!(min_separation >= 0.0))
        throw std::invalid_argument("Minimum angular separation must be non-negative.");

    std::vector<SteeringPath> selected;
    for (const auto &candidate : rank_paths(path_set))
    {
        bool separated = std::all_of(selected.begin(), selected.end(),
                                     [&](const SteeringPath &s)
                                     {
                                         return std::abs(candidate.departure_angle - s.departure_angle) >=
                                                    min_separation &&
                                                std::abs(candidate.arrival_angle - s.arrival_angle) >= min_separation;
                                     });
        if (!separated)
            continue;
        selected.push_back(candidate);
        if (int(selected.size()) == n_streams)
            return selected;
    }
    throw InsufficientPathsError(n_streams, int(selected.size()));
}

mmwsim::BeamformerPair mmwsim::analog_beam_steer(const PathSet &path_set, const ArrayGeometry &tx,
                                                 const ArrayGeometry &rx, int n_streams, double min_separation)
{
    tx.validate();
    rx.validate();
    if (n_streams > std::min(tx.n_elements, rx.n_elements))
        throw std::invalid_argument("Number of streams exceeds the array size.");

    const auto chosen = select_separated_paths(path_set, n_streams, min_separation);

    BeamformerPair out;
    out.precoder.resize(tx.n_elements, n_streams);
    out.postcoder.resize(rx.n_elements, n_streams);
    for (int j = 0; j < n_streams; ++j)
    {
        out.precoder.col(j) = steering_vector(tx, chosen[std::size_t(j)].departure_angle);
        out.postcoder.col(j) = steering_vector(rx, chosen[std::size_t(j)].arrival_angle);
    }
    out.scheme = Scheme::analog;
    return out;
}
