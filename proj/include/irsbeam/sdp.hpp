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

namespace irsbeam
{
    /// maximize tr(R V)  s.t.  V_kk = 1, V >= 0, for a small dense Hermitian R.
    class UnitDiagSdp
    {
    public:
        /// Throws InvalidArgument if R is not square, smaller than 2x2, or not Hermitian to 1e-12
        /// (relative to its largest entry). The stored matrix is exactly Hermitian.
        explicit UnitDiagSdp(const CMatrix &objective);

        const CMatrix &objective() const { return r_; }
        Eigen::Index size() const { return r_.rows(); }

        /// Re(v^H R v).
        double value(const CVector &v) const;

    private:
        CMatrix r_;
    };

    struct SdpSolution
    {
        CMatrix primal;        // V, unit diagonal, PSD
        RVector dual;          // y, with Diag(y) - R PSD
        double objective_value = 0.0; // tr(R V)
        double duality_gap = 0.0;     // sum(y) - tr(R V) >= 0
        int iterations = 0;           // interior point iterations
    };

    struct SdpOptions
    {
        double tol = 1e-9;
        int max_iterations = 500;
    };

    /// Primal-dual interior point (HKM direction) from a strictly feasible start. Every iterate is
    /// feasible, so the returned gap sum(y) - tr(R V) is a certificate. Throws SolverFailure when the
    /// gap is not below tol within max_iterations. On convergence the primal is replaced by the
    /// unit-modulus rounding of its leading eigenvector when that rank-one point scores at least as high.
    SdpSolution solve_unit_diag_sdp(const UnitDiagSdp &prob, const SdpOptions &opts = {});

    inline SdpSolution solve_unit_diag_sdp(const UnitDiagSdp &prob, double tol)
    {
        SdpOptions o;
        o.tol = tol;
        return solve_unit_diag_sdp(prob, o);
    }

    /// Gaussian randomization: draws xi ~ CN(0, V), projects each entry onto the unit circle and
    /// keeps the sample with the largest v^H R v (first sample wins ties).
    CVector extract_rank_one(const SdpSolution &sol, const UnitDiagSdp &prob, int num_samples, RandomStream &rng);
} // namespace irsbeam
