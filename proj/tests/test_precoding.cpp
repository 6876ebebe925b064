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
#include "irsbeam/precoding.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace irsbeam;
using test::naive_power;
using test::relative_difference;

namespace
{
    PhaseShiftConfig zero_phases(const ChannelSet &ch)
    {
        PhaseShiftConfig c;
        for (const CMatrix &g : ch.bs_irs)
            c.phases.push_back(RVector::Zero(g.rows()));
        return c;
    }
} // namespace

TEST(Mrt, PowerBudgetAndDirection)
{
    RandomStream rng(1);
    const CVector h = test::random_vector(rng, 5);
    const CRowVector row = h.adjoint();
    const CVector w = mrt_precoder(row, 2.0);
    EXPECT_NEAR(w.squaredNorm(), 2.0, 1e-12);
    EXPECT_NEAR(std::norm((row * w)(0, 0)), 2.0 * h.squaredNorm(), 1e-10);
    EXPECT_THROW(mrt_precoder(CRowVector::Zero(3), 1.0), DegenerateChannel);
    EXPECT_THROW(mrt_precoder(row, 0.0), InvalidArgument);
}

TEST(Mrt, NoIrsPowerIsNormSquared)
{
    RandomStream rng(2);
    const CVector h = test::random_vector(rng, 8);
    const BeamformingSolution s = mrt_no_irs(h, 0.5);
    EXPECT_NEAR(s.received_power, 0.5 * h.squaredNorm(), 1e-12);
    EXPECT_EQ(s.solver, SolverKind::MrtNoIrs);
    EXPECT_THROW(mrt_no_irs(CVector::Zero(4), 1.0), DegenerateChannel);
}

TEST(EffectiveChannel, MatchesScalarLoops)
{
    RandomStream rng(3);
    const ChannelSet ch = test::random_rank_one_set(rng, 4, 3, 2);
    PhaseShiftConfig c;
    c.phases = {RVector::Random(3).array() + 1.5, RVector::Random(3).array() + 2.0};
    const CVector w = test::random_vector(rng, 4);
    EXPECT_NEAR(received_power(w, c, ch), naive_power(ch, c.phases, w), 1e-12);
    c.phases.pop_back();
    EXPECT_THROW(effective_channel(c, ch), InvalidArgument);
}

TEST(SingleIrs, ExampleInstance)
{
    // N = 2, M = 2, G = lambda a b^T with known factors.
    ChannelSet ch;
    ch.bs_user.resize(2);
    ch.bs_user << cplx(0.5, 0.1), cplx(-0.2, 0.3);
    RankOneLink l;
    l.gain = cplx(1.0, 0.0);
    l.irs_steering = CVector::Constant(2, cplx(1.0 / std::sqrt(2.0), 0.0));
    l.bs_steering.resize(2);
    l.bs_steering << cplx(0.5, 0.5), cplx(0.5, -0.5);
    ch.bs_irs = {l.matrix()};
    ch.irs_user = {CVector(2)};
    ch.irs_user[0] << cplx(0.4, -0.1), cplx(0.1, 0.6);
    const BeamformingSolution s = solve_single_irs(ch, l, 1.0);

    const double z = (std::abs(ch.irs_user[0][0]) + std::abs(ch.irs_user[0][1])) / std::sqrt(2.0);
    const double bh = std::abs(l.bs_steering.dot(ch.bs_user.conjugate()));
    const double expect = z * z + 2.0 * z * bh + ch.bs_user.squaredNorm();
    EXPECT_NEAR(s.received_power, expect, 1e-12);
    EXPECT_NEAR(naive_power(ch, s.phase_config.phases, s.precoder), expect, 1e-12);
}

TEST(SingleIrs, MatchesIdentityAndOracle)
{
    RandomStream rng(10);
    for (int trial = 0; trial < 25; ++trial)
    {
        const int n = 1 + trial % 6;
        const int m = 1 + trial % 4;
        const ChannelSet ch = test::random_rank_one_set(rng, n, m, 1);
        const RankOneLink &l = ch.rank_one[0];
        const double p = 0.7;
        const BeamformingSolution s = solve_single_irs(ch, l, p);
        EXPECT_NO_THROW(s.phase_config.validate());
        EXPECT_NEAR(s.precoder.squaredNorm(), p, 1e-12);

        const double z = std::abs(l.gain) * ch.irs_user[0].cwiseAbs().cwiseProduct(l.irs_steering.cwiseAbs()).sum();
        const double bh = std::abs((l.bs_steering.transpose() * ch.bs_user)(0, 0));
        const double identity = p * (z * z + 2.0 * z * bh + ch.bs_user.squaredNorm());
        EXPECT_LT(relative_difference(s.received_power, identity), 1e-9);
        EXPECT_LT(relative_difference(naive_power(ch, s.phase_config.phases, s.precoder), identity), 1e-9);

        OracleOptions o;
        o.grid_bits = 5;
        const BeamformingSolution bf = brute_force_phases(ch, p, o);
        EXPECT_GE(s.received_power, bf.received_power * (1.0 - 1e-9));
        EXPECT_LT(relative_difference(s.received_power, bf.received_power), 1e-6);
    }
}

TEST(SingleIrs, Preconditions)
{
    RandomStream rng(4);
    const ChannelSet two = test::random_rank_one_set(rng, 3, 2, 2);
    EXPECT_THROW(solve_single_irs(two, two.rank_one[0], 1.0), InvalidArgument);
    const ChannelSet one = test::random_rank_one_set(rng, 3, 2, 1);
    EXPECT_THROW(solve_single_irs(one, one.rank_one[0], -1.0), InvalidArgument);
}

TEST(MultiIrs, AnalyticalEqualsClosedFormForOneIrs)
{
    RandomStream rng(11);
    for (int trial = 0; trial < 10; ++trial)
    {
        const ChannelSet ch = test::random_rank_one_set(rng, 4, 5, 1);
        const double a = solve_multi_irs_analytical(ch, ch.rank_one, 1.0).received_power;
        const double c = solve_single_irs(ch, ch.rank_one[0], 1.0).received_power;
        EXPECT_LT(relative_difference(a, c), 1e-12);
    }
}

TEST(MultiIrs, DominanceChain)
{
    // no IRS <= analytical <= best alpha <= SDR bound, and SDR rounding <= SDR bound.
    RandomStream rng(12);
    for (int trial = 0; trial < 15; ++trial)
    {
        const int k = 2 + trial % 3;
        const ChannelSet ch = test::random_rank_one_set(rng, 6, 4, k, 0.3);
        const double p = 1.3;
        const double mrt = mrt_no_irs(ch.bs_user, p).received_power;
        const BeamformingSolution an = solve_multi_irs_analytical(ch, ch.rank_one, p);
        RandomStream srng(trial);
        const BeamformingSolution sdr = solve_multi_irs_sdr(ch, ch.rank_one, p, 200, srng);
        const double ub = sdr_upper_bound(ch, ch.rank_one, p);
        OracleOptions o;
        o.grid_bits = 6;
        const double best = brute_force_alpha(ch, ch.rank_one, p, o).received_power;

        const double slack = 1e-9 * ub;
        EXPECT_LE(mrt, an.received_power + slack);
        EXPECT_LE(an.received_power, best + slack);
        EXPECT_LE(best, ub + 1e-6 * ub);
        EXPECT_LE(sdr.received_power, ub + 1e-6 * ub);
        EXPECT_NEAR(an.received_power, naive_power(ch, an.phase_config.phases, an.precoder), slack);
        EXPECT_NEAR(sdr.received_power, naive_power(ch, sdr.phase_config.phases, sdr.precoder), slack);
        EXPECT_NO_THROW(an.phase_config.validate());
        EXPECT_NO_THROW(sdr.phase_config.validate());
    }
}

TEST(MultiIrs, SdrDeterministicGivenStream)
{
    RandomStream rng(13);
    const ChannelSet ch = test::random_rank_one_set(rng, 4, 3, 3);
    RandomStream a(5), b(5);
    const BeamformingSolution x = solve_multi_irs_sdr(ch, ch.rank_one, 1.0, 50, a);
    const BeamformingSolution y = solve_multi_irs_sdr(ch, ch.rank_one, 1.0, 50, b);
    EXPECT_EQ(x.received_power, y.received_power);
    EXPECT_EQ(x.precoder, y.precoder);
}

TEST(MultiIrs, UpperBoundTightForOneIrs)
{
    RandomStream rng(14);
    const ChannelSet ch = test::random_rank_one_set(rng, 5, 6, 1);
    const double c = solve_single_irs(ch, ch.rank_one[0], 1.0).received_power;
    EXPECT_NEAR(sdr_upper_bound(ch, ch.rank_one, 1.0), c, 1e-6 * c);
}

TEST(MultiIrs, NoDirectPath)
{
    RandomStream rng(15);
    ChannelSet ch = test::random_rank_one_set(rng, 4, 3, 2);
    ch.bs_user.setZero();
    const BeamformingSolution s = solve_multi_irs_analytical(ch, ch.rank_one, 1.0);
    EXPECT_GT(s.received_power, 0.0);
    EXPECT_LE(s.received_power, sdr_upper_bound(ch, ch.rank_one, 1.0) * (1.0 + 1e-6));
}

TEST(RankOneChannels, ReplacesEveryG)
{
    RandomStream rng(16);
    ChannelSet ch = test::random_rank_one_set(rng, 3, 2, 2);
    ch.bs_irs[1] += CMatrix::Constant(2, 3, cplx(0.1, 0.0));
    const ChannelSet r = rank_one_channels(ch, ch.rank_one);
    EXPECT_LT((r.bs_irs[1] - ch.rank_one[1].matrix()).norm(), 1e-15);
    EXPECT_THROW(rank_one_channels(ch, {ch.rank_one[0]}), InvalidArgument);
}

TEST(Quantize, NearestGridPoint)
{
    EXPECT_DOUBLE_EQ(quantize_phase(0.1, 1), 0.0);
    EXPECT_FALSE(std::signbit(quantize_phase(0.1, 1)));
    EXPECT_DOUBLE_EQ(quantize_phase(3.0, 1), kPi);
    EXPECT_DOUBLE_EQ(quantize_phase(kTwoPi - 0.1, 2), 0.0);
    EXPECT_DOUBLE_EQ(quantize_phase(kPi / 2 + 0.2, 2), kPi / 2);
    EXPECT_THROW(quantize_phase(0.0, 0), InvalidArgument);
}

TEST(Quantize, MidpointGoesToSmallerPhase)
{
    EXPECT_DOUBLE_EQ(quantize_phase(kPi / 2, 1), 0.0);
    EXPECT_DOUBLE_EQ(quantize_phase(3 * kPi / 2, 1), kPi);
    EXPECT_DOUBLE_EQ(quantize_phase(kPi / 4, 2), 0.0);
}

TEST(Quantize, ErrorBoundedByHalfStep)
{
    RandomStream rng(17);
    for (int b = 1; b <= 6; ++b)
    {
        const double half = kPi / std::ldexp(1.0, b);
        for (int i = 0; i < 500; ++i)
        {
            const double t = rng.uniform(0.0, kTwoPi);
            const double q = quantize_phase(t, b);
            EXPECT_LE(std::abs(std::arg(std::polar(1.0, t - q))), half + 1e-12);
        }
    }
}

TEST(Quantize, ConfigCarriesResolution)
{
    PhaseShiftConfig c;
    c.phases = {RVector::LinSpaced(7, 0.0, 6.0)};
    const PhaseShiftConfig q = quantize_phases(c, 3);
    ASSERT_TRUE(q.resolution_bits.has_value());
    EXPECT_EQ(*q.resolution_bits, 3);
    EXPECT_NO_THROW(q.validate());
    PhaseShiftConfig bad = q;
    bad.phases[0][1] += 0.01;
    EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(PhaseShiftConfig, RangeCheck)
{
    PhaseShiftConfig c;
    c.phases = {RVector::Constant(2, kTwoPi)};
    EXPECT_THROW(c.validate(), InvalidArgument);
    c.phases = {RVector::Constant(2, -0.1)};
    EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(CompleteWithMrt, OptimalPrecoderForFixedPhases)
{
    RandomStream rng(18);
    const ChannelSet ch = test::random_rank_one_set(rng, 4, 3, 1);
    const PhaseShiftConfig c = zero_phases(ch);
    const BeamformingSolution s = complete_with_mrt(c, ch, 1.0, SolverKind::BruteForce);
    EXPECT_NEAR(s.received_power, effective_channel(c, ch).squaredNorm(), 1e-12);
    for (int i = 0; i < 50; ++i)
    {
        const CVector w = test::random_unit_vector(rng, 4);
        EXPECT_LE(received_power(w, c, ch), s.received_power + 1e-12);
    }
}
