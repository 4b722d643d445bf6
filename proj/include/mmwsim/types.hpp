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

#ifndef MMWSIM_TYPES_HPP
#define MMWSIM_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace mmwsim
{
    using cx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RVector = Eigen::VectorXd;

    inline constexpr double pi = std::numbers::pi;

    // Half-open angle interval used for all departure/arrival angles
    inline constexpr double angle_min = -pi / 2.0;
    inline constexpr double angle_max = pi / 2.0;

    inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
}

#endif
