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

#ifndef MMWSIM_RNG_HPP
#define MMWSIM_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace mmwsim
{
    // Random source for all stochastic draws. The engine is std::mt19937_64, whose output
    // sequence is fixed by the C++ standard. The variate transforms below are written out
    // explicitly rather than using <random> distributions, whose algorithms are
    // implementation-defined, so that draws are identical across standard libraries.
    class Rng
    {
    public:
        static constexpr std::string_view algorithm_name = "mt19937_64";

        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        std::uint64_t next_u64() { return engine_(); }

        // Uniform on [0, 1) with 53 random bits
        double uniform01();

        // Uniform on [lo, hi)
        double uniform(double lo, double hi);

        // Standard normal via Box-Muller; consumes two engine outputs and returns one pair
        std::pair<double, double> normal_pair();

        // Circularly-symmetric complex Gaussian CN(0, variance)
        std::complex<double> complex_normal(double variance);

        // Laplacian with zero mean and the given scale b (density exp(-|x|/b) / 2b)
        double laplacian(double scale);

        bool bernoulli(double p);

    private:
        std::mt19937_64 engine_;
    };

    // 64-bit avalanche finalizer (SplitMix64)
    std::uint64_t splitmix64(std::uint64_t x);

    // Per-trial seed derivation. Pure function of its arguments:
    //   h = splitmix64(master_seed)
    //   h = splitmix64(h ^ splitmix64(cell_index + 0x9E3779B97F4A7C15))
    //   h = splitmix64(h ^ splitmix64(trial_index + 0xD1B54A32D192ED03))
    std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t cell_index, std::uint64_t trial_index);
}

#endif
