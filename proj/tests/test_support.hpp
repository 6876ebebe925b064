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

#include "irsbeam/channel.hpp"
#include "irsbeam/rng.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace irsbeam::test
{
    inline CVector random_vector(RandomStream &rng, Eigen::Index n, double variance = 1.0)
    {
        return rng.complex_normal_vector(n, variance);
    }

    inline CVector random_unit_vector(RandomStream &rng, Eigen::Index n)
    {
        CVector v = rng.complex_normal_vector(n, 1.0);
        return v / v.norm();
    }

    /// K IRSs, each with an exactly rank-one G_k built from random unit-norm steering vectors.
    inline ChannelSet random_rank_one_set(RandomStream &rng, int n, int m, int k, double direct_variance = 1.0)
    {
        ChannelSet ch;
        ch.bs_user = random_vector(rng, n, direct_variance);
        for (int i = 0; i < k; ++i)
        {
            RankOneLink l;
            l.gain = rng.complex_normal(4.0);
            l.irs_steering = random_unit_vector(rng, m);
            l.bs_steering = random_unit_vector(rng, n);
            ch.bs_irs.push_back(l.matrix());
            ch.irs_user.push_back(random_vector(rng, m));
            ch.rank_one.push_back(l);
        }
        return ch;
    }

    /// |(h_d^H + sum_k h_r_k^H diag(e^{j theta_k}) G_k) w|^2 written out with scalar loops.
    inline double naive_power(const ChannelSet &ch, const std::vector<RVector> &theta, const CVector &w)
    {
        std::complex<double> acc = 0.0;
        for (Eigen::Index n = 0; n < w.size(); ++n)
        {
            std::complex<double> row = std::conj(ch.bs_user[n]);
            for (std::size_t k = 0; k < ch.bs_irs.size(); ++k)
                for (Eigen::Index m = 0; m < ch.bs_irs[k].rows(); ++m)
                    row += std::conj(ch.irs_user[k][m]) * std::polar(1.0, theta[k][m]) * ch.bs_irs[k](m, n);
            acc += row * w[n];
        }
        return std::norm(acc);
    }

    inline double relative_difference(double a, double b)
    {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
    }
} // namespace irsbeam::test
