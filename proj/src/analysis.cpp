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


#include "irsbeam/analysis.hpp"

#include <cmath>

namespace irsbeam
{
    void ScalingLawParams::validate() const
    {
        require(num_antennas >= 1 && num_elements >= 1, "ScalingLawParams: N and M must be >= 1");
        const std::size_t k = irs_user_sigma.size();
        require(k >= 1, "ScalingLawParams: at least one IRS required");
        require(los_gain_mean_abs.size() == k && los_gain_mean_sq.size() == k,
                "ScalingLawParams: per-IRS lists must have equal length");
        require(bs_user_sigma >= 0.0, "ScalingLawParams: bs_user_sigma must be >= 0");
        for (std::size_t i = 0; i < k; ++i)
        {
            require(irs_user_sigma[i] > 0.0, "ScalingLawParams: irs_user_sigma must be > 0");
            const double m1 = los_gain_mean_abs[i];
            const double m2 = los_gain_mean_sq[i];
            require(m1 >= 0.0 && m2 >= 0.0, "ScalingLawParams: gain moments must be >= 0");
            require(m2 >= m1 * m1 * (1.0 - 1e-12), "ScalingLawParams: E|rho|^2 < (E|rho|)^2");
        }
    }

    double expected_power_single(const ScalingLawParams &p)
    {
        p.validate();
        require(p.num_irs() == 1, "expected_power_single: exactly one IRS required");
        return expected_power_multi(p);
    }

    double expected_power_multi(const ScalingLawParams &p)
    {
        p.validate();
        const double n = p.num_antennas;
        const double m = p.num_elements;
        const double sd = p.bs_user_sigma;
        double total = n * sd * sd;
        for (int k = 0; k < p.num_irs(); ++k)
        {
            const double sr = p.irs_user_sigma[k];
            const double e1 = p.los_gain_mean_abs[k];
            const double e2 = p.los_gain_mean_sq[k];
            total += n * m * m * (kPi * sr * sr / 4.0) * e2;
            total += 2.0 * m * std::sqrt(n) * e1 * (kPi * sr * sd / 4.0);
            total += n * m * (2.0 - kPi / 2.0) * e2 * sr * sr / 2.0;
        }
        return total;
    }

    double quantization_ratio(int bits)
    {
        require(bits >= 1, "quantization_ratio: bits must be >= 1");
        const double levels = std::ldexp(1.0, bits);
        const double eta1 = levels / kPi * std::sin(kPi / levels);
        return eta1 * eta1;
    }

    double expected_power_discrete(const ScalingLawParams &p, int bits)
    {
        p.validate();
        require(bits >= 1, "expected_power_discrete: bits must be >= 1");
        const double eta1 = std::sqrt(quantization_ratio(bits));
        const double n = p.num_antennas;
        const double m = p.num_elements;
        const double sd = p.bs_user_sigma;
        double total = n * sd * sd;
        for (int k = 0; k < p.num_irs(); ++k)
        {
            const double sr = p.irs_user_sigma[k];
            const double e1 = p.los_gain_mean_abs[k];
            const double e2 = p.los_gain_mean_sq[k];
            total += n * m * sr * sr * e2;
            total += n * m * (m - 1.0) * e2 * (kPi * sr * sr / 4.0) * eta1 * eta1;
            total += 2.0 * eta1 * m * std::sqrt(n) * (kPi * sd * sr / 4.0) * e1;
        }
        return total;
    }

    double throughput(double power, double noise)
    {
        require(noise > 0.0, "throughput: noise power must be > 0");
        require(power >= 0.0, "throughput: power must be >= 0");
        return std::log2(1.0 + power / noise);
    }

    double outage_probability(const std::vector<double> &samples, double threshold)
    {
        require(!samples.empty(), "outage_probability: empty sample list");
        std::size_t below = 0;
        for (double s : samples)
            if (s < threshold)
                ++below;
        return static_cast<double>(below) / static_cast<double>(samples.size());
    }
} // namespace irsbeam
