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


#include "irsbeam/precoding.hpp"

#include <cmath>

namespace irsbeam
{
    std::string to_string(SolverKind kind)
    {
        switch (kind)
        {
        case SolverKind::SingleIrsClosedForm:
            return "single_irs_closed_form";
        case SolverKind::MultiIrsAnalytical:
            return "multi_irs_analytical";
        case SolverKind::MultiIrsSdr:
            return "multi_irs_sdr";
        case SolverKind::MrtNoIrs:
            return "mrt_no_irs";
        case SolverKind::BruteForce:
            return "brute_force";
        }
        return "unknown";
    }

    void PhaseShiftConfig::validate() const
    {
        if (resolution_bits)
            require(*resolution_bits >= 1 && *resolution_bits <= 30, "PhaseShiftConfig: resolution_bits out of range");
        for (const RVector &irs : phases)
        {
            for (Eigen::Index m = 0; m < irs.size(); ++m)
            {
                const double t = irs[m];
                require(t >= 0.0 && t < kTwoPi, "PhaseShiftConfig: phase outside [0, 2pi)");
                if (resolution_bits)
                {
                    const double x = t * std::ldexp(1.0, *resolution_bits) / kTwoPi;
                    require(std::abs(x - std::round(x)) <= 1e-9, "PhaseShiftConfig: phase not on the quantization grid");
                }
            }
        }
    }

    CRowVector effective_channel(const PhaseShiftConfig &phases, const ChannelSet &ch)
    {
        ch.validate();
        require(phases.phases.size() == ch.bs_irs.size(), "effective_channel: one phase vector per IRS required");
        CRowVector row = ch.bs_user.adjoint();
        for (std::size_t k = 0; k < ch.bs_irs.size(); ++k)
        {
            const RVector &theta = phases.phases[k];
            const CVector &hr = ch.irs_user[k];
            require(theta.size() == hr.size(), "effective_channel: phase vector length must equal M_k");
            CVector c(hr.size());
            for (Eigen::Index m = 0; m < hr.size(); ++m)
                c[m] = std::conj(hr[m]) * unit_phasor(theta[m]);
            row.noalias() += c.transpose() * ch.bs_irs[k];
        }
        return row;
    }

    double received_power(const CVector &w, const PhaseShiftConfig &phases, const ChannelSet &ch)
    {
        const CRowVector row = effective_channel(phases, ch);
        require(w.size() == row.size(), "received_power: precoder length must equal N");
        return std::norm((row * w)(0, 0));
    }

    CVector mrt_precoder(const CRowVector &row, double p)
    {
        require(p > 0.0, "mrt_precoder: power budget must be > 0");
        const double nrm = row.norm();
        if (!(nrm > 0.0))
            throw DegenerateChannel("mrt_precoder: effective channel is zero");
        return (std::sqrt(p) / nrm) * row.adjoint();
    }

    ChannelSet rank_one_channels(const ChannelSet &ch, const std::vector<RankOneLink> &links)
    {
        require(links.size() == ch.bs_irs.size(), "rank_one_channels: one link per IRS required");
        ChannelSet out = ch;
        out.rank_one = links;
        for (std::size_t k = 0; k < links.size(); ++k)
            out.bs_irs[k] = links[k].matrix();
        out.validate();
        return out;
    }

    BeamformingSolution complete_with_mrt(const PhaseShiftConfig &phases, const ChannelSet &ch, double p,
                                          SolverKind tag)
    {
        BeamformingSolution sol;
        sol.phase_config = phases;
        sol.solver = tag;
        sol.precoder = mrt_precoder(effective_channel(phases, ch), p);
        sol.received_power = received_power(sol.precoder, phases, ch);
        return sol;
    }

    AlignedIrs align_irs(const CVector &irs_user, const RankOneLink &link)
    {
        require(irs_user.size() == link.irs_steering.size(), "align_irs: h_r and a_k lengths differ");
        AlignedIrs out;
        const Eigen::Index m = irs_user.size();
        out.theta_bar.resize(m);
        for (Eigen::Index i = 0; i < m; ++i)
        {
            const cplx g = link.gain * std::conj(irs_user[i]) * link.irs_steering[i];
            out.theta_bar[i] = -arg0(g);
            out.z += std::abs(g);
        }
        out.bs_steering = link.bs_steering;
        return out;
    }

    CMatrix stacked_phi(const std::vector<AlignedIrs> &aligned)
    {
        require(!aligned.empty(), "stacked_phi: no IRS");
        const Eigen::Index n = aligned.front().bs_steering.size();
        CMatrix phi(static_cast<Eigen::Index>(aligned.size()), n);
        for (std::size_t k = 0; k < aligned.size(); ++k)
        {
            require(aligned[k].bs_steering.size() == n, "stacked_phi: b_k lengths differ");
            phi.row(static_cast<Eigen::Index>(k)) = aligned[k].z * aligned[k].bs_steering.transpose();
        }
        return phi;
    }

    PhaseShiftConfig phases_from_alpha(const std::vector<AlignedIrs> &aligned, const RVector &alpha)
    {
        require(alpha.size() == static_cast<Eigen::Index>(aligned.size()), "phases_from_alpha: one alpha per IRS");
        PhaseShiftConfig cfg;
        for (std::size_t k = 0; k < aligned.size(); ++k)
        {
            RVector t = aligned[k].theta_bar;
            for (Eigen::Index m = 0; m < t.size(); ++m)
                t[m] = wrap_phase(alpha[static_cast<Eigen::Index>(k)] + t[m]);
            cfg.phases.push_back(std::move(t));
        }
        return cfg;
    }

    namespace
    {
        std::vector<AlignedIrs> align_all(const ChannelSet &ch, const std::vector<RankOneLink> &links)
        {
            require(links.size() == ch.irs_user.size(), "solver: one rank-one link per IRS required");
            std::vector<AlignedIrs> out;
            for (std::size_t k = 0; k < links.size(); ++k)
            {
                require(links[k].bs_steering.size() == ch.bs_user.size(), "solver: b_k length must equal N");
                out.push_back(align_irs(ch.irs_user[k], links[k]));
            }
            return out;
        }

        // R = [[Phi Phi^H, Phi h_d], [h_d^H Phi^H, 0]] so that ||v^T Phi + h_d^H||^2 = x^H R x + ||h_d||^2
        // with x = [conj(v); 1].
        CMatrix homogeneous_objective(const CMatrix &phi, const CVector &h_d)
        {
            const Eigen::Index k = phi.rows();
            CMatrix r = CMatrix::Zero(k + 1, k + 1);
            r.topLeftCorner(k, k) = phi * phi.adjoint();
            const CVector u = phi * h_d;
            r.topRightCorner(k, 1) = u;
            r.bottomLeftCorner(1, k) = u.adjoint();
            return r;
        }
    } // namespace

    BeamformingSolution solve_single_irs(const ChannelSet &ch, const RankOneLink &link, double p)
    {
        require(ch.num_irs() == 1, "solve_single_irs: exactly one IRS required");
        require(p > 0.0, "solve_single_irs: power budget must be > 0");
        const std::vector<RankOneLink> links{link};
        const ChannelSet design = rank_one_channels(ch, links);
        const AlignedIrs irs = align_irs(ch.irs_user[0], link);
        RVector alpha(1);
        alpha[0] = -arg0(link.bs_steering.transpose() * ch.bs_user);
        return complete_with_mrt(phases_from_alpha({irs}, alpha), design, p, SolverKind::SingleIrsClosedForm);
    }

    BeamformingSolution solve_multi_irs_analytical(const ChannelSet &ch, const std::vector<RankOneLink> &links,
                                                   double p)
    {
        require(ch.num_irs() >= 1, "solve_multi_irs_analytical: at least one IRS required");
        require(p > 0.0, "solve_multi_irs_analytical: power budget must be > 0");
        const ChannelSet design = rank_one_channels(ch, links);
        const std::vector<AlignedIrs> aligned = align_all(ch, links);
        const CVector u = stacked_phi(aligned) * ch.bs_user;
        RVector alpha(u.size());
        for (Eigen::Index k = 0; k < u.size(); ++k)
            alpha[k] = -arg0(u[k]);
        return complete_with_mrt(phases_from_alpha(aligned, alpha), design, p, SolverKind::MultiIrsAnalytical);
    }

    BeamformingSolution solve_multi_irs_sdr(const ChannelSet &ch, const std::vector<RankOneLink> &links, double p,
                                            int num_randomizations, RandomStream &rng, const SdpOptions &opts)
    {
        require(ch.num_irs() >= 1, "solve_multi_irs_sdr: at least one IRS required");
        require(p > 0.0, "solve_multi_irs_sdr: power budget must be > 0");
        require(num_randomizations >= 1, "solve_multi_irs_sdr: num_randomizations must be >= 1");
        const ChannelSet design = rank_one_channels(ch, links);
        const std::vector<AlignedIrs> aligned = align_all(ch, links);
        const CMatrix r = homogeneous_objective(stacked_phi(aligned), ch.bs_user);
        const Eigen::Index k = r.rows() - 1;

        RVector alpha = RVector::Zero(k);
        const double scale = r.cwiseAbs().maxCoeff();
        if (scale > 0.0)
        {
            const UnitDiagSdp prob(r / scale);
            const SdpSolution sol = solve_unit_diag_sdp(prob, opts);
            const CVector x = extract_rank_one(sol, prob, num_randomizations, rng);
            for (Eigen::Index i = 0; i < k; ++i)
                alpha[i] = -arg0(x[i] / x[k]); // e^{j alpha_i} = conj(x_i / x_K)
        }
        return complete_with_mrt(phases_from_alpha(aligned, alpha), design, p, SolverKind::MultiIrsSdr);
    }

    double sdr_upper_bound(const ChannelSet &ch, const std::vector<RankOneLink> &links, double p,
                           const SdpOptions &opts)
    {
        require(ch.num_irs() >= 1, "sdr_upper_bound: at least one IRS required");
        require(p > 0.0, "sdr_upper_bound: power budget must be > 0");
        const std::vector<AlignedIrs> aligned = align_all(ch, links);
        const CMatrix r = homogeneous_objective(stacked_phi(aligned), ch.bs_user);
        const double direct = ch.bs_user.squaredNorm();
        const double scale = r.cwiseAbs().maxCoeff();
        if (!(scale > 0.0))
            return p * direct;
        const SdpSolution sol = solve_unit_diag_sdp(UnitDiagSdp(r / scale), opts);
        return p * (scale * sol.dual.sum() + direct);
    }

    BeamformingSolution mrt_no_irs(const CVector &h_d, double p)
    {
        ChannelSet ch;
        ch.bs_user = h_d;
        return complete_with_mrt(PhaseShiftConfig{}, ch, p, SolverKind::MrtNoIrs);
    }

    double quantize_phase(double theta, int bits)
    {
        require(bits >= 1 && bits <= 30, "quantize_phase: bits must be in [1, 30]");
        const double levels = std::ldexp(1.0, bits);
        const double x = wrap_phase(theta) * levels / kTwoPi;
        // ceil(x - 1/2) sends an exact midpoint i + 1/2 down to i.
        double idx = std::ceil(x - 0.5);
        if (idx == 0.0)
            idx = 0.0; // ceil(-0.3) is -0
        if (idx >= levels)
            idx -= levels;
        return kTwoPi * idx / levels;
    }

    PhaseShiftConfig quantize_phases(const PhaseShiftConfig &cfg, int bits)
    {
        PhaseShiftConfig out;
        out.resolution_bits = bits;
        for (const RVector &irs : cfg.phases)
        {
            RVector q(irs.size());
            for (Eigen::Index m = 0; m < irs.size(); ++m)
                q[m] = quantize_phase(irs[m], bits);
            out.phases.push_back(std::move(q));
        }
        return out;
    }
} // namespace irsbeam
