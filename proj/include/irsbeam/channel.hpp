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
#include "irsbeam/rng.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace irsbeam
{
    /// Uniform linear array (the base station).
    struct UlaGeometry
    {
        int num_elements = 1;
        double spacing_over_wavelength = 0.5;

        void validate() const;
    };

    /// Uniform rectangular array (an IRS). Element (r, c) sits at flat index r * cols + c;
    /// rows run vertically (M_z) and cols horizontally (M_y).
    struct UraGeometry
    {
        int rows = 1;
        int cols = 1;
        double spacing_over_wavelength = 0.5;

        int size() const { return rows * cols; }
        void validate() const;
    };

    /// kappa = intercept + 10 * exponent * log10(d) + xi, xi ~ N(0, shadow_sigma^2), all in dB.
    struct PathLossParams
    {
        double intercept_db = 72.0;
        double exponent = 2.92;
        double shadow_sigma_db = 8.7;

        void validate() const;
    };

    // Measured LOS / NLOS parameter sets for 28 GHz links.
    inline constexpr PathLossParams kLosPathLoss{61.4, 2.0, 5.8};
    inline constexpr PathLossParams kNlosPathLoss{72.0, 2.92, 8.7};

    struct ChannelStatistics
    {
        int paths_bs_user = 4;  // L_d
        int paths_irs_user = 4; // L_r
        int paths_bs_irs = 4;   // L
        double rician_factor_db = 13.2;
        PathLossParams los_pathloss = kLosPathLoss;
        PathLossParams nlos_pathloss = kNlosPathLoss;

        void validate() const;
    };

    struct SingleIrsGeometry
    {
        double bs_irs_horizontal_m = 119.0; // d_1
        double vertical_offset_m = 0.6;     // d_v
        double bs_user_horizontal_m = 119.0; // d

        void validate() const;
    };

    struct MultiIrsGeometry
    {
        int num_irs = 3;
        double bs_first_irs_horizontal_m = 100.0;
        double irs_span_m = 30.0; // first-to-last IRS, ignored when num_irs == 1
        double vertical_offset_m = 0.6;
        double bs_user_horizontal_m = 115.0;

        void validate() const;
    };

    /// G ~= gain * irs_steering * bs_steering^T, both steering vectors unit norm.
    struct RankOneLink
    {
        cplx gain{0.0, 0.0};
        CVector irs_steering;
        CVector bs_steering;

        CMatrix matrix() const { return gain * irs_steering * bs_steering.transpose(); }
    };

    /// One realization of all links for a K-IRS deployment.
    struct ChannelSet
    {
        CVector bs_user;                // h_d, N
        std::vector<CMatrix> bs_irs;    // G_k, M x N
        std::vector<CVector> irs_user;  // h_r_k, M
        std::vector<RankOneLink> rank_one; // optional, empty or size K

        int num_irs() const { return static_cast<int>(bs_irs.size()); }
        int num_antennas() const { return static_cast<int>(bs_user.size()); }

        /// Throws InvalidArgument on inconsistent list lengths or dimensions.
        void validate() const;
    };

    struct LinkDistances
    {
        double bs_irs_m;
        double irs_user_m;
    };

    CVector ula_response(double angle, const UlaGeometry &geom);
    CVector ura_response(double azimuth, double elevation, const UraGeometry &geom);

    /// Draws the shadowing term and returns the linear path gain 10^(-kappa/10).
    double pathloss_variance(double distance_m, const PathLossParams &params, RandomStream &rng);
    /// Median (shadowing-free) linear path gain.
    double median_pathloss(double distance_m, const PathLossParams &params);
    /// One sample of CN(0, 10^(-kappa/10)).
    cplx pathloss_gain(double distance_m, const PathLossParams &params, RandomStream &rng);

    CVector gen_bs_user_channel(const UlaGeometry &geom, const ChannelStatistics &stats, double distance_m,
                                RandomStream &rng);
    CVector gen_irs_user_channel(const UraGeometry &geom, const ChannelStatistics &stats, double distance_m,
                                 RandomStream &rng);

    struct BsIrsChannel
    {
        CMatrix matrix;
        RankOneLink los;
    };

    BsIrsChannel gen_bs_irs_channel(const UlaGeometry &tx, const UraGeometry &rx, const ChannelStatistics &stats,
                                    double distance_m, RandomStream &rng);

    /// Dominant singular triplet of an arbitrary M x N matrix by power iteration, returned as a
    /// RankOneLink with a real nonnegative gain.
    RankOneLink dominant_rank_one(const CMatrix &g, double tol = 1e-10, int max_iterations = 10000);

    /// Horizontal geometry of the single-IRS deployment. d3 may be zero; see clamp_distance().
    LinkDistances single_irs_distances(const SingleIrsGeometry &g);
    std::vector<LinkDistances> multi_irs_positions(const MultiIrsGeometry &g);
    std::vector<double> multi_irs_offsets(const MultiIrsGeometry &g);

    inline constexpr double kMinLinkDistance = 0.1;
    inline double clamp_distance(double d) { return d < kMinLinkDistance ? kMinLinkDistance : d; }
} // namespace irsbeam
