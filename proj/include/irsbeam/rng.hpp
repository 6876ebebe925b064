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

#include <cstdint>
#include <random>

namespace irsbeam
{
    /// Explicit source of randomness threaded through every stochastic call.
    ///
    /// A stream is a 64-bit Mersenne Twister plus its cached normal deviate, so
    /// copying a stream duplicates its future output exactly. Streams for
    /// independent work units are obtained with derive(), which hashes the
    /// parent seed with the unit coordinates.
    class RandomStream
    {
    public:
        explicit RandomStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

        static RandomStream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

        std::uint64_t seed() const { return seed_; }

        double uniform(double lo, double hi);
        double normal();
        /// Circularly symmetric complex Gaussian with E|x|^2 = variance.
        cplx complex_normal(double variance);
        bool bernoulli(double p);

        /// i.i.d. CN(0, variance) vector.
        CVector complex_normal_vector(Eigen::Index n, double variance);

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, 1.0};
    };

    std::uint64_t splitmix64(std::uint64_t x);
} // namespace irsbeam
