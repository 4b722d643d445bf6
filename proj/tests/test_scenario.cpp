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

#include "mmwsim/scenario.hpp"

#include <cmath>

using namespace mmwsim;
using Catch::Approx;

namespace
{
    PathSet single_path(cx gain, double attenuation, double t, double r)
    {
        PathSet ps;
        ps.n_clusters = 1;
        ps.n_rays_per_cluster = 1;
        PathComponent p;
        p.gain = gain;
        p.attenuation = attenuation;
        p.departure_angle = t;
        p.arrival_angle = r;
        ps.paths.push_back(p);
        return ps;
    }

    ScenarioConfig small_config()
    {
        ScenarioConfig c;
        c.tx_geometry = {32, 0.5};
        c.rx_geometry = {16, 0.5};
        c.n_streams = 2;
        return c;
    }
}

TEST_CASE("draw_scenario - distances and counts")
{
    auto c = small_config();
    c.n_users = 3;
    c.fixed_distance_m = 30.0;
    Rng rng(1);
    auto r = draw_scenario(c, rng);
    REQUIRE(r.distances.size() == 3);
    for (double d : r.distances)
        CHECK(d == 30.0);
    CHECK(r.channels.size() == 3);
    CHECK(r.beamformers.size() == 3);

    c.n_users = 1;
    c.fixed_distance_m.reset();
    auto r1 = draw_scenario(c, rng);
    CHECK(r1.channels.size() == 1);
    CHECK(r1.distances.size() == 1);
    CHECK(r1.beamformers.size() == 1);
    CHECK(r1.distances[0] >= 10.0);
    CHECK(r1.distances[0] < 100.0);
}

TEST_CASE("draw_scenario - seeded draws are bit-identical")
{
    auto c = small_config();
    c.n_users = 2;
    Rng a(55), b(55);
    auto ra = draw_scenario(c, a), rb = draw_scenario(c, b);
    for (int k = 0; k < 2; ++k)
    {
        CHECK(ra.distances[k] == rb.distances[k]);
        CHECK(ra.channels[k].matrix == rb.channels[k].matrix);
        CHECK(ra.beamformers[k].precoder == rb.beamformers[k].precoder);
        CHECK(ra.beamformers[k].postcoder == rb.beamformers[k].postcoder);
    }
}

TEST_CASE("draw_scenario - analog failures name the user")
{
    auto c = small_config();
    c.scheme = Scheme::analog;
    c.n_users = 2;
    c.n_streams = 2;
    c.channel_params.n_clusters = 1;
    c.channel_params.n_rays_per_cluster = 1;
    c.channel_params.los_probability.kind = LosProbabilityModel::Kind::never;
    Rng rng(3);
    try
    {
        draw_scenario(c, rng);
        FAIL("expected a user error");
    }
    catch (const ScenarioUserError &e)
    {
        CHECK(e.user_index() == 0);
        CHECK(std::string(e.what()).rfind("user 0:", 0) == 0);
    }
}

TEST_CASE("ScenarioConfig - validation")
{
    auto c = small_config();
    CHECK_NOTHROW(c.validate());
    c.n_streams = 17;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.n_users = 17;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.distance_max_m = 5.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.hybrid_params.n_rf_rx = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    CHECK(c.effective_n_rf_tx() == 2);
    c.n_users = 3;
    CHECK(c.effective_n_rf_tx() == 6);
    CHECK(c.effective_n_rf_rx() == 2);
}

TEST_CASE("evaluate_scenario - single path digital matches the closed form")
{
    ScenarioConfig c;
    c.tx_geometry = {64, 0.5};
    c.rx_geometry = {16, 0.5};
    c.n_streams = 1;
    c.scheme = Scheme::digital;
    const cx alpha(0.8, -0.5);
    const double att = 1e-11;
    ScenarioRealization r;
    r.channels.push_back(assemble_channel(single_path(alpha, att, 0.3, -0.7), c.tx_geometry, c.rx_geometry));
    r.distances.push_back(30.0);
    r.beamformers.push_back(build_beamformer(r.channels[0], c));
    auto m = evaluate_scenario(r, c);
    const double expected = std::log2(1.0 + c.power.transmit_power * 64 * 16 * att * std::norm(alpha) /
                                                c.power.noise_variance);
    CHECK(m.sum_ase == Approx(expected).epsilon(1e-9));
    CHECK(m.asee == Approx(m.sum_ase / (64 * 0.1 + 2.0 * 1.0)).epsilon(1e-12));
}

TEST_CASE("evaluate_scenario - orthogonal users add up")
{
    // Two users on distinct DFT-grid departure angles see no interference, so the two-user sum
    // equals the two single-user rates at the same per-stream power.
    ScenarioConfig c;
    c.tx_geometry = {32, 0.5};
    c.rx_geometry = {8, 0.5};
    c.n_streams = 1;
    c.n_users = 2;
    c.scheme = Scheme::digital;
    ScenarioRealization r;
    r.channels.push_back(assemble_channel(single_path(cx(1.0, 0.2), 1e-11, std::asin(2.0 * 4 / 32), 0.1),
                                          c.tx_geometry, c.rx_geometry));
    r.channels.push_back(assemble_channel(single_path(cx(-0.3, 0.9), 1e-11, std::asin(-2.0 * 7 / 32), -0.5),
                                          c.tx_geometry, c.rx_geometry));
    r.distances = {30.0, 30.0};
    for (const auto &ch : r.channels)
        r.beamformers.push_back(build_beamformer(ch, c));
    auto both = evaluate_scenario(r, c);

    auto single = c;
    single.n_users = 1;
    single.power.transmit_power = c.power.transmit_power / 2.0;
    double isolated = 0.0;
    for (int k = 0; k < 2; ++k)
    {
        ScenarioRealization one;
        one.channels = {r.channels[k]};
        one.distances = {30.0};
        one.beamformers = {r.beamformers[k]};
        const double v = evaluate_scenario(one, single).sum_ase;
        CHECK(both.per_user_ase[k] == Approx(v).margin(1e-6));
        isolated += v;
    }
    CHECK(both.sum_ase == Approx(isolated).margin(1e-6));
}

TEST_CASE("evaluate_scenario - digital equals hybrid with full RF chains")
{
    ScenarioConfig c;
    c.tx_geometry = {16, 0.5};
    c.rx_geometry = {8, 0.5};
    c.n_streams = 2;
    c.fixed_distance_m = 15.0;
    c.hybrid_params.n_rf_tx = 16;
    c.hybrid_params.n_rf_rx = 8;
    for (int t = 0; t < 5; ++t)
    {
        auto cd = c;
        cd.scheme = Scheme::digital;
        auto ch = c;
        ch.scheme = Scheme::hybrid;
        Rng a(100 + t), b(100 + t);
        const double vd = evaluate_scenario(draw_scenario(cd, a), cd).sum_ase;
        const double vh = evaluate_scenario(draw_scenario(ch, b), ch).sum_ase;
        CHECK(vh == Approx(vd).margin(1e-6));
    }
}

TEST_CASE("evaluate_scenario - interference never helps")
{
    ScenarioConfig c;
    c.tx_geometry = {64, 0.5};
    c.rx_geometry = {16, 0.5};
    c.n_streams = 2;
    c.n_users = 2;
    c.fixed_distance_m = 20.0;
    auto single = c;
    single.n_users = 1;
    single.power.transmit_power = c.power.transmit_power / 2.0;
    for (Scheme s : {Scheme::digital, Scheme::hybrid})
    {
        c.scheme = single.scheme = s;
        for (int t = 0; t < 10; ++t)
        {
            Rng rng(derive_seed(9, 0, std::uint64_t(t)));
            auto r = draw_scenario(c, rng);
            auto m = evaluate_scenario(r, c);
            for (int k = 0; k < 2; ++k)
            {
                ScenarioRealization one;
                one.channels = {r.channels[k]};
                one.distances = {r.distances[k]};
                one.beamformers = {r.beamformers[k]};
                CHECK(m.per_user_ase[k] <= evaluate_scenario(one, single).sum_ase + 1e-9);
            }
        }
    }
}

TEST_CASE("dominant_path - strongest under the analog ranking")
{
    PathSet ps = single_path(cx(0.1), 1.0, 0.2, 0.3);
    PathComponent p;
    p.cluster_index = 2;
    p.gain = cx(0.0, 2.0);
    p.departure_angle = -0.5;
    p.arrival_angle = 0.6;
    ps.paths.push_back(p);
    ps.n_clusters = 2;
    auto d = dominant_path(ps);
    CHECK(d.cluster_index == 2);
    CHECK(d.departure_angle == -0.5);
    CHECK_THROWS_AS(dominant_path(PathSet{}), std::invalid_argument);
}
