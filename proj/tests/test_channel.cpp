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

#include <catch2/catch_amalgamated.hpp>

#include "mmwsim/channel.hpp"

#include <cmath>
#include <map>
#include <set>

using namespace mmwsim;
using Catch::Approx;

TEST_CASE("steering_vector - closed forms")
{
    SECTION("single element")
    {
        auto a = steering_vector({1, 0.5}, 0.7);
        REQUIRE(a.size() == 1);
        CHECK(std::abs(a[0] - cx(1.0)) < 1e-15);
    }
    SECTION("broadside")
    {
        auto a = steering_vector({4, 0.5}, 0.0);
        for (int m = 0; m < 4; ++m)
            CHECK(std::abs(a[m] - cx(0.5)) < 1e-15);
    }
    SECTION("endfire at half wavelength alternates sign")
    {
        auto a = steering_vector({2, 0.5}, pi / 2);
        CHECK(std::abs(a[0] - cx(1.0 / std::sqrt(2.0))) < 1e-15);
        CHECK(std::abs(a[1] - cx(-1.0 / std::sqrt(2.0))) < 1e-15);
    }
    SECTION("element formula with non-default spacing")
    {
        const double s = 0.37, phi = -0.4;
        auto a = steering_vector({7, s}, phi);
        for (int m = 0; m < 7; ++m)
        {
            cx expected = std::exp(cx(0.0, -2.0 * pi * s * m * std::sin(phi))) / std::sqrt(7.0);
            CHECK(std::abs(a[m] - expected) < 1e-14);
        }
    }
}

TEST_CASE("steering_vector - input errors")
{
    CHECK_THROWS_AS(steering_vector({4, 0.5}, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector({4, 0.5}, INFINITY), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector({0, 0.5}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector({4, 0.0}, 0.1), std::invalid_argument);
}

TEST_CASE("steering_vector - unit norm property")
{
    Rng rng(2024);
    for (int t = 0; t < 500; ++t)
    {
        const int n = 1 + int(rng.next_u64() % 1024);
        const double spacing = rng.uniform(0.1, 2.0);
        const double angle = rng.uniform(-10.0, 10.0);
        REQUIRE(std::abs(steering_vector({n, spacing}, angle).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("steering_vector - decorrelation with array size")
{
    Rng rng(7);
    for (int t = 0; t < 50; ++t)
    {
        const double sp = rng.uniform(-0.85, 0.75);
        const double sq = sp + rng.uniform(0.1, 0.25);
        const double p = std::asin(sp), q = std::asin(sq);
        double prev = 2.0;
        for (int n : {16, 64, 256, 1024})
        {
            ArrayGeometry g{n, 0.5};
            const double c = std::abs(steering_vector(g, p).dot(steering_vector(g, q)));
            if (n > 16)
                CHECK(c <= prev + 1e-12);
            prev = c;
        }
        CHECK(prev < 0.05);
    }
}

TEST_CASE("path_loss - log-distance law")
{
    PathLossModel m; // 70 dB, n = 3.4
    CHECK(path_loss(1.0, m) == Approx(1e-7).epsilon(1e-12));
    CHECK(path_loss(10.0, m) == Approx(std::pow(10.0, -10.4)).epsilon(1e-12));
    CHECK(path_loss(100.0, m) == Approx(std::pow(10.0, -13.8)).epsilon(1e-12));
    CHECK_THROWS_AS(path_loss(0.5, m), std::invalid_argument);

    double prev = path_loss(1.0, m);
    for (double d = 1.5; d < 500.0; d *= 1.5)
    {
        const double l = path_loss(d, m);
        CHECK(l < prev);
        prev = l;
    }
}

TEST_CASE("wrap_angle - reflection keeps sin and interval")
{
    Rng rng(3);
    for (int t = 0; t < 1000; ++t)
    {
        const double x = rng.uniform(-20.0, 20.0);
        const double w = wrap_angle(x);
        CHECK(w >= angle_min);
        CHECK(w < angle_max);
        CHECK(std::abs(std::sin(w) - std::sin(x)) < 1e-9);
    }
    CHECK(wrap_angle(pi / 2) < pi / 2);
    CHECK(wrap_angle(0.3) == 0.3);
}

TEST_CASE("draw_path_set - counting contract")
{
    ChannelParams params;
    params.n_clusters = 3;
    params.n_rays_per_cluster = 4;
    Rng rng(1);
    auto ps = draw_path_set(params, 30.0, rng);
    REQUIRE(ps.paths.size() == 12);
    std::map<int, int> per_cluster;
    for (const auto &p : ps.paths)
    {
        ++per_cluster[p.cluster_index];
        CHECK(p.ray_index >= 1);
        CHECK(p.ray_index <= 4);
        CHECK(p.departure_angle >= angle_min);
        CHECK(p.departure_angle < angle_max);
        CHECK(p.arrival_angle >= angle_min);
        CHECK(p.arrival_angle < angle_max);
        CHECK(p.attenuation == Approx(path_loss(30.0, params.path_loss)));
    }
    CHECK(per_cluster == std::map<int, int>{{1, 4}, {2, 4}, {3, 4}});
    CHECK(ps.los.phase >= 0.0);
    CHECK(ps.los.phase < 2.0 * pi);
}

TEST_CASE("draw_path_set - gain law")
{
    ChannelParams params;
    params.n_clusters = 10;
    params.n_rays_per_cluster = 10;
    Rng rng(99);
    double acc = 0.0;
    cx mean = 0.0;
    int n = 0;
    for (int t = 0; t < 1000; ++t) // 10^5 gains
        for (const auto &p : draw_path_set(params, 20.0, rng).paths)
        {
            acc += std::norm(p.gain);
            mean += p.gain;
            ++n;
        }
    CHECK(std::abs(acc / n - 1.0) < 0.02);
    CHECK(std::abs(mean / double(n)) < 0.01);
}

TEST_CASE("draw_path_set - LOS Bernoulli")
{
    ChannelParams params;
    Rng rng(5);
    params.los_probability.kind = LosProbabilityModel::Kind::never;
    for (int t = 0; t < 200; ++t)
        CHECK_FALSE(draw_path_set(params, 5.0, rng).los.present);
    params.los_probability.kind = LosProbabilityModel::Kind::always;
    for (int t = 0; t < 200; ++t)
        CHECK(draw_path_set(params, 300.0, rng).los.present);

    params.los_probability.kind = LosProbabilityModel::Kind::exponential;
    CHECK(params.los_probability.probability(5.0) == 1.0);
    CHECK(params.los_probability.probability(70.0) == Approx(std::exp(-1.0)));
    int hits = 0;
    for (int t = 0; t < 20000; ++t)
        hits += draw_path_set(params, 70.0, rng).los.present;
    CHECK(hits / 20000.0 == Approx(std::exp(-1.0)).margin(0.015));
}

TEST_CASE("draw_path_set - ray offsets are Laplacian around the cluster centre")
{
    // With one ray per cluster pair, the departure-minus-arrival structure is hidden; use many
    // rays and compare the spread of offsets from the per-cluster median to the Laplacian scale.
    ChannelParams params;
    params.n_clusters = 1;
    params.n_rays_per_cluster = 2;
    params.angle_spread = 0.01;
    Rng rng(8);
    double acc = 0.0;
    int n = 0;
    for (int t = 0; t < 20000; ++t)
    {
        auto ps = draw_path_set(params, 20.0, rng);
        // Difference of two iid Laplace(b) variables has E|X - Y| = 1.5 b
        const double d = ps.paths[0].departure_angle - ps.paths[1].departure_angle;
        if (std::abs(ps.paths[0].departure_angle) < 1.4) // away from the reflection edges
        {
            acc += std::abs(d);
            ++n;
        }
    }
    CHECK(acc / n == Approx(1.5 * 0.01).epsilon(0.03));
}

TEST_CASE("draw_path_set - precondition violations")
{
    ChannelParams params;
    Rng rng(1);
    CHECK_THROWS_AS(draw_path_set(params, 0.5, rng), std::invalid_argument);
    params.n_clusters = 0;
    CHECK_THROWS_AS(draw_path_set(params, 30.0, rng), std::invalid_argument);
}

TEST_CASE("assemble_channel - single path closed form")
{
    PathSet ps;
    ps.n_clusters = 1;
    ps.n_rays_per_cluster = 1;
    PathComponent p;
    p.gain = cx(0.6, -0.8) * 1.7;
    p.attenuation = 1.0;
    p.departure_angle = 0.3;
    p.arrival_angle = -0.5;
    ps.paths.push_back(p);

    ArrayGeometry tx{32, 0.5}, rx{16, 0.5};
    auto ch = assemble_channel(ps, tx, rx);
    CHECK(ch.normalization == Approx(std::sqrt(32.0 * 16.0)));

    CMatrix expected = std::sqrt(32.0 * 16.0) * p.gain * steering_vector(rx, -0.5) * steering_vector(tx, 0.3).adjoint();
    CHECK((ch.matrix - expected).norm() < 1e-12);

    Eigen::JacobiSVD<CMatrix> svd(ch.matrix);
    CHECK(svd.singularValues()[0] == Approx(std::sqrt(32.0 * 16.0) * 1.7).epsilon(1e-12));
    CHECK(svd.singularValues()[1] < 1e-10);
}

TEST_CASE("assemble_channel - LOS term")
{
    PathSet ps;
    ps.n_clusters = 1;
    ps.n_rays_per_cluster = 1;
    PathComponent p;
    p.gain = 0.0;
    ps.paths.push_back(p);
    ps.los = {true, 1.1, 40.0, 2.5e-3, 0.2, -0.7};

    ArrayGeometry tx{8, 0.5}, rx{4, 0.5};
    auto ch = assemble_channel(ps, tx, rx);
    CMatrix expected = std::sqrt(8.0 * 4.0 * 2.5e-3) * std::polar(1.0, 1.1) * steering_vector(rx, -0.7) *
                       steering_vector(tx, 0.2).adjoint();
    CHECK((ch.matrix - expected).norm() < 1e-14);

    ps.los.present = false;
    CHECK(assemble_channel(ps, tx, rx).matrix.norm() == 0.0);
}

TEST_CASE("assemble_channel - inconsistent path set")
{
    PathSet ps;
    ArrayGeometry g{4, 0.5};
    CHECK_THROWS_AS(assemble_channel(ps, g, g), std::invalid_argument);
    ps.n_clusters = 2;
    ps.n_rays_per_cluster = 2;
    ps.paths.resize(3);
    CHECK_THROWS_AS(assemble_channel(ps, g, g), std::invalid_argument);
}

TEST_CASE("assemble_channel - rank bound property")
{
    Rng rng(31);
    const std::pair<int, int> sizes[] = {{8, 16}, {16, 32}, {32, 64}, {64, 256}, {50, 100}};
    for (int t = 0; t < 100; ++t)
    {
        ChannelParams params;
        params.n_clusters = 1 + int(rng.next_u64() % 5);
        params.n_rays_per_cluster = 1 + int(rng.next_u64() % 6);
        params.los_probability.kind = LosProbabilityModel::Kind::always;
        auto [n_r, n_t] = sizes[t % 5];
        auto ch = assemble_channel(draw_path_set(params, 25.0, rng), {n_t, 0.5}, {n_r, 0.5});
        REQUIRE(ch.matrix.rows() == n_r);
        REQUIRE(ch.matrix.cols() == n_t);
        CHECK(numerical_rank(ch.matrix) <= params.n_clusters * params.n_rays_per_cluster + 1);
    }
}

TEST_CASE("assemble_channel - power normalization")
{
    // E|alpha|^2 = 1 and unit-norm outer products give E||H||_F^2 = N_R N_T with L = 1
    ChannelParams params;
    params.n_clusters = 3;
    params.n_rays_per_cluster = 4;
    params.los_probability.kind = LosProbabilityModel::Kind::never;
    params.path_loss.intercept_db = 0.0;
    params.path_loss.exponent = 0.0;
    Rng rng(17);
    const int n_t = 32, n_r = 16, draws = 10000;
    double acc = 0.0;
    for (int t = 0; t < draws; ++t)
        acc += assemble_channel(draw_path_set(params, 10.0, rng), {n_t, 0.5}, {n_r, 0.5}).matrix.squaredNorm();
    CHECK(acc / draws / (n_t * n_r) == Approx(1.0).margin(0.02));
}

TEST_CASE("assemble_channel - deterministic")
{
    ChannelParams params;
    params.los_probability.kind = LosProbabilityModel::Kind::always;
    Rng rng(4);
    auto ps = draw_path_set(params, 30.0, rng);
    auto a = assemble_channel(ps, {64, 0.5}, {32, 0.5});
    auto b = assemble_channel(ps, {64, 0.5}, {32, 0.5});
    CHECK(a.matrix == b.matrix);
}

TEST_CASE("draw_path_set - seeded reproducibility")
{
    ChannelParams params;
    Rng a(123), b(123);
    auto pa = draw_path_set(params, 30.0, a);
    auto pb = draw_path_set(params, 30.0, b);
    REQUIRE(pa.paths.size() == pb.paths.size());
    for (std::size_t i = 0; i < pa.paths.size(); ++i)
    {
        CHECK(pa.paths[i].gain == pb.paths[i].gain);
        CHECK(pa.paths[i].departure_angle == pb.paths[i].departure_angle);
    }
}
