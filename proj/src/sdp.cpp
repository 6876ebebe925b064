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


#include "irsbeam/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace irsbeam
{
    UnitDiagSdp::UnitDiagSdp(const CMatrix &objective)
    {
        require(objective.rows() == objective.cols(), "UnitDiagSdp: objective must be square");
        require(objective.rows() >= 2, "UnitDiagSdp: objective must be at least 2x2");
        const double scale = std::max(1.0, objective.cwiseAbs().maxCoeff());
        const double asym = (objective - objective.adjoint()).cwiseAbs().maxCoeff();
        require(asym <= 1e-12 * scale, "UnitDiagSdp: objective is not Hermitian");
        r_ = 0.5 * (objective + objective.adjoint());
    }

    double UnitDiagSdp::value(const CVector &v) const
    {
        return v.dot(r_ * v).real(); // Eigen's dot conjugates the left operand
    }

    namespace
    {
        double trace_product(const CMatrix &a, const CMatrix &b)
        {
            // Re tr(A B) for Hermitian A, B
            return (a.cwiseProduct(b.transpose())).sum().real();
        }

        // Largest t in (0, 1] with M + t D still PSD, for PD M with Cholesky factor l.
        double max_step(const Eigen::LLT<CMatrix> &l, const CMatrix &d)
        {
            const CMatrix x = l.matrixL().solve(l.matrixL().solve(d).adjoint()).adjoint();
            Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (x + x.adjoint()), Eigen::EigenvaluesOnly);
            const double lo = es.eigenvalues().minCoeff();
            return lo >= -1.0 ? 1.0 : -1.0 / lo;
        }

        struct Direction
        {
            CMatrix dx;
            RVector dy;
        };

        // HKM search direction for target X Z = target * I, keeping diag(X) fixed.
        Direction hkm_direction(const CMatrix &x, const CMatrix &zinv, const Eigen::MatrixXd &schur, double target)
        {
            const Eigen::Index n = x.rows();
            const RVector rhs = target * zinv.diagonal().real() - RVector::Ones(n);
            Direction d;
            d.dy = schur.partialPivLu().solve(rhs);
            CMatrix dx = target * zinv - x - zinv * d.dy.cast<cplx>().asDiagonal() * x;
            d.dx = 0.5 * (dx + dx.adjoint());
            d.dx.diagonal().setZero();
            return d;
        }

        // The unit-modulus rounding of the leading eigenvector is feasible; keep it when it is no worse.
        void polish_rank_one(const UnitDiagSdp &prob, SdpSolution &sol)
        {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(sol.primal);
            const CVector u = es.eigenvectors().col(es.eigenvectors().cols() - 1);
            CVector v(u.size());
            for (Eigen::Index i = 0; i < u.size(); ++i)
                v[i] = unit_phasor(arg0(u[i]));
            const double val = prob.value(v);
            if (val < sol.objective_value)
                return;
            sol.primal = v * v.adjoint();
            sol.objective_value = val;
            sol.duality_gap = std::max(0.0, sol.dual.sum() - val);
        }
    } // namespace

    SdpSolution solve_unit_diag_sdp(const UnitDiagSdp &prob, const SdpOptions &opts)
    {
        require(opts.tol > 0.0, "solve_unit_diag_sdp: tol must be > 0");
        require(opts.max_iterations >= 1, "solve_unit_diag_sdp: max_iterations must be >= 1");
        const Eigen::Index n = prob.size();
        const CMatrix &r = prob.objective();

        SdpSolution sol;
        if (r.cwiseAbs().maxCoeff() == 0.0)
        {
            sol.primal = CMatrix::Identity(n, n);
            sol.dual = RVector::Zero(n);
            return sol;
        }

        // Strictly feasible start: X = I, y large enough for Diag(y) - R to be diagonally dominant.
        CMatrix x = CMatrix::Identity(n, n);
        RVector y = r.cwiseAbs().rowwise().sum() + RVector::Ones(n);
        CMatrix z = -r;
        z.diagonal() += y.cast<cplx>();

        for (int it = 0;; ++it)
        {
            const double obj = trace_product(r, x);
            const double gap = y.sum() - obj;
            sol.primal = x;
            sol.dual = y;
            sol.objective_value = obj;
            sol.duality_gap = std::max(0.0, gap);
            sol.iterations = it;
            if (gap <= opts.tol)
            {
                polish_rank_one(prob, sol);
                return sol;
            }
            if (it >= opts.max_iterations)
            {
                std::ostringstream msg;
                msg << "solve_unit_diag_sdp: no convergence after " << it << " iterations (gap=" << gap
                    << ", n=" << n << ")";
                throw SolverFailure(msg.str());
            }

            const Eigen::LLT<CMatrix> lx(x);
            const Eigen::LLT<CMatrix> lz(z);
            if (lx.info() != Eigen::Success || lz.info() != Eigen::Success)
                throw SolverFailure("solve_unit_diag_sdp: iterate lost definiteness");
            const CMatrix zinv = lz.solve(CMatrix::Identity(n, n));
            const Eigen::MatrixXd schur = zinv.cwiseProduct(x.conjugate()).real();
            const double mu = gap / static_cast<double>(n);

            // Predictor to pick the centering weight, then the centered step.
            const Direction aff = hkm_direction(x, zinv, schur, 0.0);
            const CMatrix aff_dz = aff.dy.cast<cplx>().asDiagonal();
            const double ap = max_step(lx, aff.dx);
            const double ad = max_step(lz, aff_dz);
            const double gap_aff = trace_product(x + ap * aff.dx, z + ad * aff_dz);
            const double sigma = std::clamp(std::pow(std::max(gap_aff, 0.0) / gap, 3.0), 1e-4, 1.0);

            const Direction d = hkm_direction(x, zinv, schur, sigma * mu);
            const CMatrix dz = d.dy.cast<cplx>().asDiagonal();
            const double tp = std::min(1.0, 0.95 * max_step(lx, d.dx));
            const double td = std::min(1.0, 0.95 * max_step(lz, dz));

            x += tp * d.dx;
            x = 0.5 * (x + x.adjoint());
            x.diagonal().setOnes();
            y += td * d.dy;
            z = -r;
            z.diagonal() += y.cast<cplx>();
        }
    }

    CVector extract_rank_one(const SdpSolution &sol, const UnitDiagSdp &prob, int num_samples, RandomStream &rng)
    {
        require(num_samples >= 1, "extract_rank_one: num_samples must be >= 1");
        const Eigen::Index n = prob.size();
        require(sol.primal.rows() == n && sol.primal.cols() == n, "extract_rank_one: size mismatch");

        Eigen::SelfAdjointEigenSolver<CMatrix> es(sol.primal);
        const RVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        const CMatrix factor = es.eigenvectors() * root.cast<cplx>().asDiagonal();

        CVector best = CVector::Ones(n);
        double best_value = -std::numeric_limits<double>::infinity();
        CVector candidate(n);
        for (int s = 0; s < num_samples; ++s)
        {
            const CVector xi = factor * rng.complex_normal_vector(n, 1.0);
            for (Eigen::Index i = 0; i < n; ++i)
                candidate[i] = unit_phasor(arg0(xi[i]));
            const double val = prob.value(candidate);
            if (val > best_value)
            {
                best_value = val;
                best = candidate;
            }
        }
        return best;
    }
} // namespace irsbeam
