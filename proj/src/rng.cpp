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

#include "mmwsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

double mmwsim::Rng::uniform01()
{
    return double(engine_() >> 11) * 0x1.0p-53;
}

double mmwsim::Rng::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform01();
}

std::pair<double, double> mmwsim::Rng::normal_pair()
{
    // u1 in (0, 1] so that log(u1) is finite
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

std::complex<double> mmwsim::Rng::complex_normal(double variance)
{
    auto [re, im] = normal_pair();
    double s = std::sqrt(0.5 * variance);
    return {s * re, s * im};
}

double mmwsim::Rng::laplacian(double scale)
{
    // Inverse CDF with u uniform on (-1/2, 1/2]
    double u = 0.5 - uniform01();
    double a = std::abs(u);
    if (a >= 0.5)
        a = std::nextafter(0.5, 0.0);
    double mag = -scale * std::log(1.0 - 2.0 * a);
    return u < 0.0 ? -mag : mag;
}

bool mmwsim::Rng::bernoulli(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("Bernoulli probability must lie in [0, 1].");
    // Always consume one draw so the stream position does not depend on p
    double u = uniform01();
    return u < p;
}

std::uint64_t mmwsim::splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t mmwsim::derive_seed(std::uint64_t master_seed, std::uint64_t cell_index, std::uint64_t trial_index)
{
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ splitmix64(cell_index + 0x9E3779B97F4A7C15ULL));
    h = splitmix64(h ^ splitmix64(trial_index + 0xD1B54A32D192ED03ULL));
    return h;
}
