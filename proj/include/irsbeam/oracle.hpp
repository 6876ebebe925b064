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

#include "irsbeam/precoding.hpp"

#include <vector>

namespace irsbeam
{
    inline constexpr int kMaxOraclePhaseVariables = 8; // K * M for brute_force_phases
    inline constexpr int kMaxOracleIrs = 4;            // K for brute_force_alpha
    inline constexpr int kMaxOracleGridLog2 = 26;      // bits * variables

    struct GridSearchResult
    {
        std::vector<int> indices; // grid index per variable
        RVector phases;
        double value = 0.0; // ||base + sum_i e^{j theta_i} terms_i||^2
    };

    /// Exhaustive maximization of ||base + sum_i e^{j theta_i} terms_i||^2 over theta_i in
    /// {2*pi*q / 2^bits}. Candidates are visited in lexicographic index order and the first maximum
    /// wins, so Serial and Parallel return bit-identical results. Throws ProblemTooLarge beyond 2^26 candidates.
    GridSearchResult grid_search(const CRowVector &base, const std::vector<CRowVector> &terms, int bits,
                                 Execution exec);

    /// Cyclic coordinate ascent with golden-section line search on [theta_i - pi/2, theta_i + pi/2].
    /// Only improving moves are kept. Stops when no phase moves more than 1e-10 or after 100 sweeps.
    RVector polish_phases(const CRowVector &base, const std::vector<CRowVector> &terms, RVector theta);

    double grid_objective(const CRowVector &base, const std::vector<CRowVector> &terms, const RVector &theta);

    struct OracleOptions
    {
        int grid_bits = 4;
        bool polish = true;
        Execution execution = Execution::Parallel;
    };

    /// Searches every reflection phase of every IRS against the full G_k in ch, MRT for each candidate.
    /// Throws ProblemTooLarge when K*M > 8 or the grid exceeds 2^26 candidates.
    BeamformingSolution brute_force_phases(const ChannelSet &ch, double p, const OracleOptions &opts);

    /// Searches the per-IRS common phases alpha_k with the aligned phases theta_bar_k fixed.
    /// Throws ProblemTooLarge when K > 4 or the grid exceeds 2^26 candidates.
    BeamformingSolution brute_force_alpha(const ChannelSet &ch, const std::vector<RankOneLink> &links, double p,
                                          const OracleOptions &opts);
} // namespace irsbeam
