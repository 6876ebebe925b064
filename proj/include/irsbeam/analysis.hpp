// SPDX-License-Identifier: Apache-2.0
//
// irsbeam: joint active and passive beamforming for IRS-assisted mmWave links
// Copyright (C) 2026 The irsbeam authors
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


#pragma once

#include "irsbeam/common.hpp"

#include <vector>

namespace irsbeam
{
    /// Statistics of the propositions' model: h_d ~ CN(0, sigma_d^2 I), h_r_k ~ CN(0, sigma_r_k^2 I),
    /// G_k = sqrt(N M) rho_k a_k b_k^T with unit-norm steering vectors.
    struct ScalingLawParams
    {
        int num_antennas = 1; // N
        int num_elements = 1; // M, per IRS
        std::vector<double> irs_user_sigma;     // sigma_r_k
        double bs_user_sigma = 1.0;             // sigma_d
        std::vector<double> los_gain_mean_abs;  // E|rho_k|
        std::vector<double> los_gain_mean_sq;   // E|rho_k|^2

        int num_irs() const { return static_cast<int>(irs_user_sigma.size()); }

        /// Sizes, signs, and E|rho|^2 >= (E|rho|)^2 (relative slack 1e-12).
        void validate() const;
    };

    /// Mean received power for one IRS, unit transmit power.
    double expected_power_single(const ScalingLawParams &p);

    /// Mean received power of the multi-IRS analytical solution, unit transmit power.
    double expected_power_multi(const ScalingLawParams &p);

    /// ((2^b / pi) sin(pi / 2^b))^2.
    double quantization_ratio(int bits);

    /// Mean received power with b-bit uniform phase quantization, unit transmit power.
    double expected_power_discrete(const ScalingLawParams &p, int bits);

    /// log2(1 + power / noise).
    double throughput(double power, double noise);

    /// Fraction of samples strictly below the threshold.
    double outage_probability(const std::vector<double> &samples, double threshold);
} // namespace irsbeam
