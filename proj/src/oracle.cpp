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

#include <cmath>
#include <limits>

namespace irsbeam
{
    namespace
    {
        struct ChunkBest
        {
            double value = -std::numeric_limits<double>::infinity();
            std::vector<int> indices;
        };

        class GridWalker
        {
        public:
            GridWalker(const CRowVector &base, const std::vector<CRowVector> &terms, int bits)
                : base_(base), levels_(1 << bits), vars_(static_cast<int>(terms.size()))
            {
                rotated_.resize(terms.size());
                for (std::size_t i = 0; i < terms.size(); ++i)
                {
                    rotated_[i].reserve(levels_);
                    for (int q = 0; q < levels_; ++q)
                        rotated_[i].push_back(unit_phasor(kTwoPi * q / levels_) * terms[i]);
                }
                prefix_ = (vars_ >= 2 && levels_ < 16) ? 2 : (vars_ >= 1 ? 1 : 0);
            }

            int levels() const { return levels_; }

            long chunks() const
            {
                long c = 1;
                for (int i = 0; i < prefix_; ++i)
                    c *= levels_;
                return c;
            }

            // Enumerates every candidate whose leading prefix_ digits encode `chunk`.
            ChunkBest run(long chunk) const
            {
                std::vector<int> idx(vars_, 0);
                for (int i = prefix_ - 1; i >= 0; --i)
                {
                    idx[i] = static_cast<int>(chunk % levels_);
                    chunk /= levels_;
                }
                std::vector<CRowVector> partial(vars_ + 1);
                partial[0] = base_;
                for (int i = 0; i < prefix_; ++i)
                    partial[i + 1] = partial[i] + rotated_[i][idx[i]];
                ChunkBest best;
                descend(prefix_, idx, partial, best);
                return best;
            }

        private:
            void descend(int depth, std::vector<int> &idx, std::vector<CRowVector> &partial, ChunkBest &best) const
            {
                if (depth == vars_)
                {
                    const double v = partial[vars_].squaredNorm();
                    if (v > best.value)
                    {
                        best.value = v;
                        best.indices = idx;
                    }
                    return;
                }
                for (int q = 0; q < levels_; ++q)
                {
                    idx[depth] = q;
                    partial[depth + 1] = partial[depth] + rotated_[depth][q];
                    descend(depth + 1, idx, partial, best);
                }
            }

            const CRowVector &base_;
            int levels_;
            int vars_;
            int prefix_ = 0;
            std::vector<std::vector<CRowVector>> rotated_;
        };

        double coordinate_value(const CRowVector &rest, const CRowVector &term, double t)
        {
            return (rest + unit_phasor(t) * term).squaredNorm();
        }

        // Golden-section maximization of a coordinate slice over [lo, hi].
        double golden_max(const CRowVector &rest, const CRowVector &term, double lo, double hi)
        {
            const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double a = lo, b = hi;
            double c = b - inv_phi * (b - a);
            double d = a + inv_phi * (b - a);
            double fc = coordinate_value(rest, term, c);
            double fd = coordinate_value(rest, term, d);
            while (b - a > 1e-11)
            {
                if (fc >= fd)
                {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - inv_phi * (b - a);
                    fc = coordinate_value(rest, term, c);
                }
                else
                {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + inv_phi * (b - a);
                    fd = coordinate_value(rest, term, d);
                }
            }
            return 0.5 * (a + b);
        }

        PhaseShiftConfig split_phases(const RVector &flat, const std::vector<Eigen::Index> &sizes,
                                      std::optional<int> bits)
        {
            PhaseShiftConfig cfg;
            cfg.resolution_bits = bits;
            Eigen::Index off = 0;
            for (Eigen::Index m : sizes)
            {
                RVector t(m);
                for (Eigen::Index i = 0; i < m; ++i)
                    t[i] = wrap_phase(flat[off + i]);
                off += m;
                cfg.phases.push_back(std::move(t));
            }
            return cfg;
        }

        void check_grid(int bits, int vars, const char *who)
        {
            require(bits >= 1, std::string(who) + ": grid_bits must be >= 1");
            if (static_cast<long>(bits) * vars > kMaxOracleGridLog2)
                throw ProblemTooLarge(std::string(who) + ": grid exceeds 2^26 candidates");
        }
    } // namespace

    GridSearchResult grid_search(const CRowVector &base, const std::vector<CRowVector> &terms, int bits,
                                 Execution exec)
    {
        require(bits >= 1 && bits <= 16, "grid_search: bits must be in [1, 16]");
        for (const CRowVector &t : terms)
            require(t.size() == base.size(), "grid_search: term length differs from base");
        check_grid(bits, static_cast<int>(terms.size()), "grid_search");
        const GridWalker walker(base, terms, bits);
        const long chunks = walker.chunks();
        std::vector<ChunkBest> per_chunk(static_cast<std::size_t>(chunks));

        if (exec == Execution::Parallel)
        {
#pragma omp parallel for schedule(dynamic)
            for (long c = 0; c < chunks; ++c)
                per_chunk[static_cast<std::size_t>(c)] = walker.run(c);
        }
        else
        {
            for (long c = 0; c < chunks; ++c)
                per_chunk[static_cast<std::size_t>(c)] = walker.run(c);
        }

        GridSearchResult out;
        out.value = -std::numeric_limits<double>::infinity();
        for (const ChunkBest &b : per_chunk)
        {
            if (b.value > out.value)
            {
                out.value = b.value;
                out.indices = b.indices;
            }
        }
        out.phases.resize(static_cast<Eigen::Index>(terms.size()));
        for (std::size_t i = 0; i < terms.size(); ++i)
            out.phases[static_cast<Eigen::Index>(i)] = kTwoPi * out.indices[i] / walker.levels();
        return out;
    }

    double grid_objective(const CRowVector &base, const std::vector<CRowVector> &terms, const RVector &theta)
    {
        require(theta.size() == static_cast<Eigen::Index>(terms.size()), "grid_objective: one phase per term");
        CRowVector row = base;
        for (std::size_t i = 0; i < terms.size(); ++i)
            row += unit_phasor(theta[static_cast<Eigen::Index>(i)]) * terms[i];
        return row.squaredNorm();
    }

    RVector polish_phases(const CRowVector &base, const std::vector<CRowVector> &terms, RVector theta)
    {
        require(theta.size() == static_cast<Eigen::Index>(terms.size()), "polish_phases: one phase per term");
        const Eigen::Index n = theta.size();
        for (int sweep = 0; sweep < 100; ++sweep)
        {
            double max_move = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
            {
                CRowVector rest = base;
                for (Eigen::Index j = 0; j < n; ++j)
                    if (j != i)
                        rest += unit_phasor(theta[j]) * terms[static_cast<std::size_t>(j)];
                const CRowVector &term = terms[static_cast<std::size_t>(i)];
                const double cur = coordinate_value(rest, term, theta[i]);
                const double cand = golden_max(rest, term, theta[i] - kPi / 2.0, theta[i] + kPi / 2.0);
                if (coordinate_value(rest, term, cand) > cur)
                {
                    max_move = std::max(max_move, std::abs(cand - theta[i]));
                    theta[i] = cand;
                }
            }
            if (max_move < 1e-10)
                break;
        }
        return theta;
    }

    BeamformingSolution brute_force_phases(const ChannelSet &ch, double p, const OracleOptions &opts)
    {
        ch.validate();
        require(p > 0.0, "brute_force_phases: power budget must be > 0");
        std::vector<CRowVector> terms;
        std::vector<Eigen::Index> sizes;
        for (int k = 0; k < ch.num_irs(); ++k)
        {
            const CVector &hr = ch.irs_user[k];
            sizes.push_back(hr.size());
            for (Eigen::Index m = 0; m < hr.size(); ++m)
                terms.push_back(std::conj(hr[m]) * ch.bs_irs[k].row(m));
        }
        const int vars = static_cast<int>(terms.size());
        if (vars > kMaxOraclePhaseVariables)
            throw ProblemTooLarge("brute_force_phases: K*M exceeds 8");
        if (vars == 0)
        {
            BeamformingSolution s = complete_with_mrt(PhaseShiftConfig{}, ch, p, SolverKind::BruteForce);
            return s;
        }
        check_grid(opts.grid_bits, vars, "brute_force_phases");

        const CRowVector base = ch.bs_user.adjoint();
        const GridSearchResult grid = grid_search(base, terms, opts.grid_bits, opts.execution);
        RVector theta = grid.phases;
        std::optional<int> bits = opts.grid_bits;
        if (opts.polish)
        {
            theta = polish_phases(base, terms, theta);
            bits.reset();
        }
        return complete_with_mrt(split_phases(theta, sizes, bits), ch, p, SolverKind::BruteForce);
    }

    BeamformingSolution brute_force_alpha(const ChannelSet &ch, const std::vector<RankOneLink> &links, double p,
                                          const OracleOptions &opts)
    {
        require(p > 0.0, "brute_force_alpha: power budget must be > 0");
        require(ch.num_irs() >= 1, "brute_force_alpha: at least one IRS required");
        if (ch.num_irs() > kMaxOracleIrs)
            throw ProblemTooLarge("brute_force_alpha: K exceeds 4");
        check_grid(opts.grid_bits, ch.num_irs(), "brute_force_alpha");
        const ChannelSet design = rank_one_channels(ch, links);

        std::vector<AlignedIrs> aligned;
        std::vector<CRowVector> terms;
        for (int k = 0; k < ch.num_irs(); ++k)
        {
            aligned.push_back(align_irs(ch.irs_user[k], links[k]));
            terms.push_back(aligned.back().z * aligned.back().bs_steering.transpose());
        }
        const CRowVector base = ch.bs_user.adjoint();
        const GridSearchResult grid = grid_search(base, terms, opts.grid_bits, opts.execution);
        RVector alpha = grid.phases;
        if (opts.polish)
            alpha = polish_phases(base, terms, alpha);
        return complete_with_mrt(phases_from_alpha(aligned, alpha), design, p, SolverKind::BruteForce);
    }
} // namespace irsbeam
