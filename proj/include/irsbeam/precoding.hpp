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
#include "irsbeam/sdp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace irsbeam
{
    /// Phases theta_{k,m} in [0, 2*pi), one vector per IRS.
    struct PhaseShiftConfig
    {
        std::vector<RVector> phases;
        std::optional<int> resolution_bits;

        /// Range check, and grid membership (to 1e-12) when resolution_bits is set.
        void validate() const;
    };

    enum class SolverKind
    {
        SingleIrsClosedForm,
        MultiIrsAnalytical,
        MultiIrsSdr,
        MrtNoIrs,
        BruteForce,
    };

    std::string to_string(SolverKind kind);

    struct BeamformingSolution
    {
        CVector precoder;
        PhaseShiftConfig phase_config;
        double received_power = 0.0; // on the channels the solver designed for
        SolverKind solver = SolverKind::MrtNoIrs;
    };

    /// sum_k h_r_k^H Theta_k G_k + h_d^H, as a row vector of length N.
    CRowVector effective_channel(const PhaseShiftConfig &phases, const ChannelSet &ch);

    /// |(sum_k h_r_k^H Theta_k G_k + h_d^H) w|^2.
    double received_power(const CVector &w, const PhaseShiftConfig &phases, const ChannelSet &ch);

    /// sqrt(p) * row^H / ||row||. Throws DegenerateChannel for a zero row.
    CVector mrt_precoder(const CRowVector &row, double p);

    /// Copy of ch with every G_k replaced by lambda_k a_k b_k^T from the given links.
    ChannelSet rank_one_channels(const ChannelSet &ch, const std::vector<RankOneLink> &links);

    /// Fixes the phases and completes with the MRT precoder on ch.
    BeamformingSolution complete_with_mrt(const PhaseShiftConfig &phases, const ChannelSet &ch, double p,
                                          SolverKind tag);

    /// Closed-form joint optimum for K = 1 with G = lambda a b^T.
    BeamformingSolution solve_single_irs(const ChannelSet &ch, const RankOneLink &link, double p);

    /// Per-IRS phase alignment plus the common-phase choice alpha_k = -arg(z_k b_k^T h_d).
    BeamformingSolution solve_multi_irs_analytical(const ChannelSet &ch, const std::vector<RankOneLink> &links,
                                                   double p);

    /// Semidefinite relaxation over the per-IRS common phases with Gaussian randomization.
    BeamformingSolution solve_multi_irs_sdr(const ChannelSet &ch, const std::vector<RankOneLink> &links, double p,
                                            int num_randomizations, RandomStream &rng,
                                            const SdpOptions &opts = {});

    /// Received-power upper bound for any phases on the rank-one channels, from the SDP dual value.
    double sdr_upper_bound(const ChannelSet &ch, const std::vector<RankOneLink> &links, double p,
                           const SdpOptions &opts = {});

    BeamformingSolution mrt_no_irs(const CVector &h_d, double p);

    /// Rounds each phase to the nearest point of {2*pi*i / 2^bits}; exact midpoints go to the smaller phase.
    PhaseShiftConfig quantize_phases(const PhaseShiftConfig &cfg, int bits);
    double quantize_phase(double theta, int bits);

    /// Per-IRS quantities shared by the analytical, SDR and oracle solvers.
    struct AlignedIrs
    {
        RVector theta_bar;   // -arg(g_k)
        double z = 0.0;      // ||g_k||_1
        CVector bs_steering; // b_k
    };

    AlignedIrs align_irs(const CVector &irs_user, const RankOneLink &link);

    /// Rows z_k b_k^T stacked into the K x N matrix Phi.
    CMatrix stacked_phi(const std::vector<AlignedIrs> &aligned);

    /// theta_k = wrap(alpha_k + theta_bar_k).
    PhaseShiftConfig phases_from_alpha(const std::vector<AlignedIrs> &aligned, const RVector &alpha);
} // namespace irsbeam
