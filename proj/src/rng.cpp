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


#include "irsbeam/rng.hpp"

namespace irsbeam
{
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
    {
        std::uint64_t h = splitmix64(seed);
        h = splitmix64(h ^ a);
        h = splitmix64(h ^ b);
        h = splitmix64(h ^ c);
        return RandomStream(h);
    }

    double RandomStream::uniform(double lo, double hi)
    {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(engine_);
    }

    double RandomStream::normal()
    {
        return normal_(engine_);
    }

    cplx RandomStream::complex_normal(double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

    bool RandomStream::bernoulli(double p)
    {
        if (p <= 0.0)
            return false;
        if (p >= 1.0)
            return true;
        return uniform(0.0, 1.0) < p;
    }

    CVector RandomStream::complex_normal_vector(Eigen::Index n, double variance)
    {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = complex_normal(variance);
        return v;
    }
} // namespace irsbeam
