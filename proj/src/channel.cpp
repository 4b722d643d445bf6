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

#include "mmwsim/channel.hpp"

#include <cmath>
#include <stdexcept>

void mmwsim::ArrayGeometry::validate() const
{
    if (n_elements < 1)
        throw std::invalid_argument("Array must have at least one element.");
    if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
        throw std::invalid_argument("Array element spacing must be positive.");
}

void mmwsim::PathLossModel::validate() const
{
    if (!std::isfinite(intercept_db))
        throw std::invalid_argument("Path-loss intercept must be finite.");
    if (!(exponent >= 0.0) || !std::isfinite(exponent))
        throw std::invalid_argument("Path-loss exponent must be non-negative.");
    if (!(reference_distance_m > 0.0))
        throw std::invalid_argument("Path-loss reference distance must be positive.");
}

double mmwsim::LosProbabilityModel::probability(double distance_m) const
{
    switch (kind)
    {
    case Kind::never:
        return 0.0;
    case Kind::always:
        return 1.0;
    case Kind::exponential:
        if (distance_m <= breakpoint_m)
            return 1.0;
        return std::exp(-(distance_m - breakpoint_m) / decay_m);
    }
    return 0.0;
}

void mmwsim::LosProbabilityModel::validate() const
{
    if (kind == Kind::exponential)
    {
        if (!(breakpoint_m >= 0.0))
            throw std::invalid_argument("LOS breakpoint distance must be non-negative.");
        if (!(decay_m > 0.0))
            throw std::invalid_argument("LOS decay distance must be positive.");
    }
}

std::string mmwsim::to_string(LosProbabilityModel::Kind kind)
{
    switch (kind)
    {
    case LosProbabilityModel::Kind::exponential:
        return "exponential";
    case LosProbabilityModel::Kind::never:
        return "never";
    case LosProbabilityModel::Kind::always:
        return "always";
    }
    return "exponential";
}

mmwsim::LosProbabilityModel::Kind mmwsim::parse_los_kind(const std::string &name)
{
    if (name == "exponential")
        return LosProbabilityModel::Kind::exponential;
    if (name == "never")
        return LosProbabilityModel::Kind::never;
    if (name == "always")
        return LosProbabilityModel::Kind::always;
    throw std::invalid_argument("Unknown LOS model '" + name + "' (expected exponential, never or always).");
}

void mmwsim::ChannelParams::validate() const
{
    if (n_clusters < 1)
        throw std::invalid_argument("Number of clusters must be at least 1.");
    if (n_rays_per_cluster < 1)
        throw std::invalid_argument("Number of rays per cluster must be at least 1.");
    if (!(gain_variance > 0.0))
        throw std::invalid_argument("Path gain variance must be positive.");
    if (!(angle_spread >= 0.0) || !std::isfinite(angle_spread))
        throw std::invalid_argument("Angle spread must be non-negative.");
    los_probability.validate();
    path_loss.validate();
}

mmwsim::CVector mmwsim::steering_vector(const ArrayGeometry &geometry, double angle)
{
    geometry.validate();
    if (!std::isfinite(angle))
        throw std::invalid_argument("Steering angle must be finite.");

    const int n = geometry.n_elements;
    const double scale = 1.0 / std::sqrt(double(n));
    const double step = -2.0 * pi * geometry.spacing_wavelengths * std::sin(angle);

    CVector a(n);
    for (int m = 0; m < n; ++m)
        a[m] = std::polar(scale, step * double(m));
    return a;
}

double mmwsim::path_loss(double distance_m, const PathLossModel &model)
{
    model.validate();
    if (!(distance_m >= model.reference_distance_m))
        throw std::invalid_argument("Distance " + std::to_string(distance_m) +
                                    " m is below the path-loss reference distance.");
    double loss_db = model.intercept_db + 10.0 * model.exponent * std::log10(distance_m / model.reference_distance_m);
    return std::pow(10.0, -loss_db / 10.0);
}

double mmwsim::wrap_angle(double angle)
{
    if (!std::isfinite(angle))
        throw std::invalid_argument("Cannot wrap a non-finite angle.");
    // Fold onto one period of the reflection group first
    angle = std::remainder(angle, 2.0 * pi); // now in [-pi, pi]
    if (angle >= angle_max)
        angle = pi - angle;
    else if (angle < angle_min)
        angle = -pi - angle;
    if (angle >= angle_max)
        angle = std::nextafter(angle_max, 0.0);
    return angle;
}

mmwsim::PathSet mmwsim::draw_path_set(const ChannelParams &params, double distance_m, Rng &rng)
{
    params.validate();
    const double attenuation = path_loss(distance_m, params.path_loss);

    PathSet out;
    out.n_clusters = params.n_clusters;
    out.n_rays_per_cluster = params.n_rays_per_cluster;

    // LOS draws are consumed unconditionally so the stream layout is fixed
    out.los.present = rng.bernoulli(params.los_probability.probability(distance_m));
    out.los.phase = rng.uniform(0.0, 2.0 * pi);
    out.los.departure_angle = rng.uniform(angle_min, angle_max);
    out.los.arrival_angle = rng.uniform(angle_min, angle_max);
    out.los.distance_m = distance_m;
    out.los.attenuation = attenuation;

    out.paths.reserve(std::size_t(params.n_clusters) * std::size_t(params.n_rays_per_cluster));
    for (int i = 0; i < params.n_clusters; ++i)
    {
        const double center_t = rng.uniform(angle_min, angle_max);
        const double center_r = rng.uniform(angle_min, angle_max);
        for (int l = 0; l < params.n_rays_per_cluster; ++l)
        {
            PathComponent p;
            p.cluster_index = i + 1;
            p.ray_index = l + 1;
            p.gain = rng.complex_normal(params.gain_variance);
            p.departure_angle = wrap_angle(center_t + rng.laplacian(params.angle_spread));
            p.arrival_angle = wrap_angle(center_r + rng.laplacian(params.angle_spread));
            p.attenuation = attenuation; // every ray shares the link distance
            out.paths.push_back(p);
        }
    }
    return out;
}

mmwsim::ChannelRealization mmwsim::assemble_channel(const PathSet &path_set, const ArrayGeometry &tx,
                                                    const ArrayGeometry &rx)
{
    tx.validate();
    rx.validate();
    if (path_set.paths.empty())
        throw std::invalid_argument("Path set is empty.");
    if (path_set.n_clusters < 1 || path_set.n_rays_per_cluster < 1 ||
        path_set.paths.size() != std::size_t(path_set.n_clusters) * std::size_t(path_set.n_rays_per_cluster))
        throw std::invalid_argument("Path set holds " + std::to_string(path_set.paths.size()) +
                                    " paths, inconsistent with its cluster/ray counts.");

    const int n_t = tx.n_elements, n_r = rx.n_elements;
    const auto n_paths = Eigen::Index(path_set.paths.size());
    const double gamma = std::sqrt(double(n_r) * double(n_t) / double(n_paths));

    CMatrix a_r(n_r, n_paths), a_t(n_t, n_paths);
    CVector coeff(n_paths);
    for (Eigen::Index p = 0; p < n_paths; ++p)
    {
        const auto &path = path_set.paths[std::size_t(p)];
        if (path.attenuation < 0.0)
            throw std::invalid_argument("Path attenuation must be non-negative.");
        a_r.col(p) = steering_vector(rx, path.arrival_angle);
        a_t.col(p) = steering_vector(tx, path.departure_angle);
        coeff[p] = gamma * path.gain * std::sqrt(path.attenuation);
    }

    ChannelRealization out;
    out.matrix = a_r * coeff.asDiagonal() * a_t.adjoint();

    const auto &los = path_set.los;
    if (los.present)
    {
        cx w = std::sqrt(double(n_r) * double(n_t) * los.attenuation) * std::polar(1.0, los.phase);
        out.matrix += w * steering_vector(rx, los.arrival_angle) * steering_vector(tx, los.departure_angle).adjoint();
    }
    out.path_set = path_set;
    out.normalization = gamma;
    return out;
}

int mmwsim::numerical_rank(const CMatrix &m, double rel_tol)
{
    if (m.size() == 0)
        return 0;
    Eigen::BDCSVD<CMatrix> svd(m);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0)
        return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > rel_tol * s[0])
            ++rank;
    return rank;
}
