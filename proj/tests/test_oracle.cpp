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


#include "irsbeam/oracle.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace irsbeam;

namespace
{
    struct Problem
    {
        CRowVector base;
        std::vector<CRowVector> terms;
    };

    Problem random_problem(RandomStream &rng, int n, int vars)
    {
        Problem p;
        p.base = test::random_vector(rng, n).transpose();
        for (int i = 0; i < vars; ++i)
            p.terms.push_back(test::random_vector(rng, n).transpose());
        return p;
    }

    // Odometer enumeration, independent of the DFS in the library.
    double naive_grid_max(const Problem &p, int bits)
    {
        const int levels = 1 << bits;
        const std::size_t vars = p.terms.size();
        std::vector<int> idx(vars, 0);
        double best = -1.0;
        while (true)
        {
            CRowVector s = p.base;
            for (std::size_t i = 0; i < vars; ++i)
                s += std::polar(1.0, kTwoPi * idx[i] / levels) * p.terms[i];
            best = std::max(best, s.squaredNorm());
            std::size_t d = 0;
            while (d < vars && ++idx[d] == levels)
                idx[d++] = 0;
            if (d == vars)
                break;
        }
        return best;
    }
} // namespace

TEST(GridSearch, MatchesNaiveEnumeration)
{
    RandomStream rng(1);
    for (int trial = 0; trial < 12; ++trial)
    {
        const Problem p = random_problem(rng, 3, 1 + trial % 4);
        const int bits = 1 + trial % 3;
        const GridSearchResult r = grid_search(p.base, p.terms, bits, Execution::Serial);
        EXPECT_NEAR(r.value, naive_grid_max(p, bits), 1e-12 * r.value);
        EXPECT_NEAR(r.value, grid_objective(p.base, p.terms, r.phases), 1e-12 * r.value);
        for (std::size_t i = 0; i < p.terms.size(); ++i)
            EXPECT_DOUBLE_EQ(r.phases[i], kTwoPi * r.indices[i] / (1 << bits));
    }
}

TEST(GridSearch, SerialAndParallelBitIdentical)
{
    RandomStream rng(2);
    for (int trial = 0; trial < 6; ++trial)
    {
        const Problem p = random_problem(rng, 4, 2 + trial % 4);
        const GridSearchResult s = grid_search(p.base, p.terms, 4, Execution::Serial);
        const GridSearchResult q = grid_search(p.base, p.terms, 4, Execution::Parallel);
        EXPECT_EQ(s.indices, q.indices);
        EXPECT_EQ(s.value, q.value);
        EXPECT_EQ(s.phases, q.phases);
    }
}

TEST(GridSearch, TiesKeepFirstCandidate)
{
    // Zero terms make every candidate equal, so the all-zero index wins.
    const CRowVector base = CRowVector::Ones(2);
    const std::vector<CRowVector> terms(3, CRowVector::Zero(2));
    for (Execution e : {Execution::Serial, Execution::Parallel})
    {
        const GridSearchResult r = grid_search(base, terms, 3, e);
        EXPECT_EQ(r.indices, std::vector<int>(3, 0));
    }
}

TEST(GridSearch, RejectsBadInput)
{
    const CRowVector base = CRowVector::Ones(2);
    EXPECT_THROW(grid_search(base, {CRowVector::Ones(3)}, 2, Execution::Serial), InvalidArgument);
    EXPECT_THROW(grid_search(base, {CRowVector::Ones(2)}, 0, Execution::Serial), InvalidArgument);
    EXPECT_THROW(grid_search(base, std::vector<CRowVector>(3, CRowVector::Ones(2)), 9, Execution::Serial),
                 ProblemTooLarge);
}

TEST(Polish, NeverDecreasesAndReachesStationaryPoint)
{
    RandomStream rng(3);
    for (int trial = 0; trial < 10; ++trial)
    {
        const Problem p = random_problem(rng, 3, 3);
        const GridSearchResult g = grid_search(p.base, p.terms, 3, Execution::Serial);
        const RVector t = polish_phases(p.base, p.terms, g.phases);
        const double v = grid_objective(p.base, p.terms, t);
        EXPECT_GE(v, g.value);
        for (int i = 0; i < 3; ++i)
            for (double h : {-1e-4, 1e-4})
            {
                RVector u = t;
                u[i] += h;
                EXPECT_LE(grid_objective(p.base, p.terms, u), v * (1.0 + 1e-12));
            }
    }
}

TEST(BruteForce, PhasesGuard)
{
    RandomStream rng(4);
    const ChannelSet ch = test::random_rank_one_set(rng, 2, 3, 3);
    EXPECT_THROW(brute_force_phases(ch, 1.0, {}), ProblemTooLarge);
    const ChannelSet small = test::random_rank_one_set(rng, 2, 4, 1);
    OracleOptions o;
    o.grid_bits = 7;
    EXPECT_THROW(brute_force_phases(small, 1.0, o), ProblemTooLarge);
}

TEST(BruteForce, AlphaGuard)
{
    RandomStream rng(5);
    const ChannelSet ch = test::random_rank_one_set(rng, 2, 2, 5);
    EXPECT_THROW(brute_force_alpha(ch, ch.rank_one, 1.0, {}), ProblemTooLarge);
}

TEST(BruteForce, FullChannelPowerConsistent)
{
    RandomStream rng(6);
    ChannelSet ch = test::random_rank_one_set(rng, 3, 2, 2);
    ch.bs_irs[0] += CMatrix::Constant(2, 3, cplx(0.2, -0.1)); // not rank one any more
    const BeamformingSolution s = brute_force_phases(ch, 2.0, {});
    EXPECT_EQ(s.solver, SolverKind::BruteForce);
    EXPECT_NEAR(s.received_power, test::naive_power(ch, s.phase_config.phases, s.precoder), 1e-10);
    EXPECT_NEAR(s.precoder.squaredNorm(), 2.0, 1e-12);
}

TEST(BruteForce, SerialAndParallelAgree)
{
    RandomStream rng(7);
    const ChannelSet ch = test::random_rank_one_set(rng, 4, 2, 3);
    OracleOptions o;
    o.grid_bits = 4;
    o.execution = Execution::Serial;
    const BeamformingSolution a = brute_force_phases(ch, 1.0, o);
    o.execution = Execution::Parallel;
    const BeamformingSolution b = brute_force_phases(ch, 1.0, o);
    EXPECT_EQ(a.received_power, b.received_power);
    EXPECT_EQ(a.precoder, b.precoder);
}
