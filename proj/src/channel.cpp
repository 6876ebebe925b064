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


#include "irsbeam/channel.hpp"

namespace irsbeam
{
    namespace
    {
        // Angular sectors for randomly drawn paths.
        constexpr double kAzimuthHalfWidth = kPi / 2.0;
        constexpr double kElevationHalfWidth = kPi / 4.0;

        double draw_azimuth(RandomStream &rng) { return rng.uniform(-kAzimuthHalfWidth, kAzimuthHalfWidth); }
        double draw_elevation(RandomStream &rng) { return rng.uniform(-kElevationHalfWidth, kElevationHalfWidth); }

        // Per-path NLOS variance such that LOS / sum(NLOS) equals the Rician factor.
        double nlos_share(double los_variance, double rician_factor_db, int num_nlos)
        {
            if (num_nlos <= 0)
                return 0.0;
            return los_variance / (db_to_linear(rician_factor_db) * num_nlos);
        }
    } // namespace

    void UlaGeometry::validate() const
    {
        require(num_elements >= 1, "UlaGeometry: num_elements must be >= 1");
        require(spacing_over_wavelength > 0.0, "UlaGeometry: element spacing must be > 0");
    }

    void UraGeometry::validate() const
    {
        require(rows >= 1 && cols >= 1, "UraGeometry: rows and cols must be >= 1");
        require(spacing_over_wavelength > 0.0, "UraGeometry: element spacing must be > 0");
    }

    void PathLossParams::validate() const
    {
        require(shadow_sigma_db >= 0.0, "PathLossParams: shadow_sigma_db must be >= 0");
        require(std::isfinite(intercept_db) && std::isfinite(exponent), "PathLossParams: non-finite coefficient");
    }

    void ChannelStatistics::validate() const
    {
        require(paths_bs_user >= 1 && paths_irs_user >= 1 && paths_bs_irs >= 1,
                "ChannelStatistics: all path counts must be >= 1");
        require(std::isfinite(rician_factor_db), "ChannelStatistics: rician_factor_db must be finite");
        los_pathloss.validate();
        nlos_pathloss.validate();
    }

    void SingleIrsGeometry::validate() const
    {
        require(bs_irs_horizontal_m > 0.0 && vertical_offset_m > 0.0 && bs_user_horizontal_m > 0.0,
                "SingleIrsGeometry: all distances must be > 0");
    }

    void MultiIrsGeometry::validate() const
    {
        require(num_irs >= 1, "MultiIrsGeometry: num_irs must be >= 1");
        require(bs_first_irs_horizontal_m > 0.0 && vertical_offset_m > 0.0 && bs_user_horizontal_m > 0.0,
                "MultiIrsGeometry: all distances must be > 0");
        require(num_irs == 1 || irs_span_m > 0.0, "MultiIrsGeometry: irs_span_m must be > 0 for num_irs > 1");
    }

    void ChannelSet::validate() const
    {
        const auto k = bs_irs.size();
        require(irs_user.size() == k, "ChannelSet: bs_irs and irs_user lists differ in length");
        require(rank_one.empty() || rank_one.size() == k, "ChannelSet: rank_one list length must be 0 or K");
        const Eigen::Index n = bs_user.size();
        require(n >= 1, "ChannelSet: bs_user must be nonempty");
        for (std::size_t i = 0; i < k; ++i)
        {
            require(bs_irs[i].cols() == n, "ChannelSet: G_k column count must equal N");
            require(irs_user[i].size() == bs_irs[i].rows(), "ChannelSet: h_r_k length must equal rows of G_k");
            if (!rank_one.empty())
            {
                require(rank_one[i].bs_steering.size() == n, "ChannelSet: rank-one bs_steering length must equal N");
                require(rank_one[i].irs_steering.size() == bs_irs[i].rows(),
                        "ChannelSet: rank-one irs_steering length must equal M");
            }
        }
    }

    CVector ula_response(double angle, const UlaGeometry &geom)
    {
        geom.validate();
        const int n = geom.num_elements;
        const double step = kTwoPi * geom.spacing_over_wavelength * std::sin(angle);
        const double norm = 1.0 / std::sqrt(static_cast<double>(n));
        CVector a(n);
        for (int i = 0; i < n; ++i)
            a[i] = norm * unit_phasor(step * i);
        return a;
    }

    CVector ura_response(double azimuth, double elevation, const UraGeometry &geom)
    {
        geom.validate();
        const double s = kTwoPi * geom.spacing_over_wavelength;
        const double horizontal = s * std::sin(azimuth) * std::cos(elevation);
        const double vertical = s * std::sin(elevation);
        const double norm = 1.0 / std::sqrt(static_cast<double>(geom.size()));
        CVector a(geom.size());
        for (int r = 0; r < geom.rows; ++r)
            for (int c = 0; c < geom.cols; ++c)
                a[r * geom.cols + c] = norm * unit_phasor(vertical * r + horizontal * c);
        return a;
    }

    double median_pathloss(double distance_m, const PathLossParams &params)
    {
        require(distance_m > 0.0, "pathloss: distance must be > 0");
        const double kappa = params.intercept_db + 10.0 * params.exponent * std::log10(distance_m);
        return std::pow(10.0, -0.1 * kappa);
    }

    double pathloss_variance(double distance_m, const PathLossParams &params, RandomStream &rng)
    {
        require(distance_m > 0.0, "pathloss: distance must be > 0");
        const double xi = params.shadow_sigma_db > 0.0 ? params.shadow_sigma_db * rng.normal() : 0.0;
        const double kappa = params.intercept_db + 10.0 * params.exponent * std::log10(distance_m) + xi;
        return std::pow(10.0, -0.1 * kappa);
    }

    cplx pathloss_gain(double distance_m, const PathLossParams &params, RandomStream &rng)
    {
        const double var = pathloss_variance(distance_m, params, rng);
        return rng.complex_normal(var);
    }

    CVector gen_bs_user_channel(const UlaGeometry &geom, const ChannelStatistics &stats, double distance_m,
                                RandomStream &rng)
    {
        geom.validate();
        stats.validate();
        require(distance_m > 0.0, "gen_bs_user_channel: distance must be > 0");
        const int paths = stats.paths_bs_user;
        CVector h = CVector::Zero(geom.num_elements);
        for (int l = 0; l < paths; ++l)
        {
            const double phi = draw_azimuth(rng);
            const cplx alpha = pathloss_gain(distance_m, stats.nlos_pathloss, rng);
            h += alpha * ula_response(phi, geom);
        }
        return std::sqrt(static_cast<double>(geom.num_elements) / paths) * h;
    }

    CVector gen_irs_user_channel(const UraGeometry &geom, const ChannelStatistics &stats, double distance_m,
                                 RandomStream &rng)
    {
        geom.validate();
        stats.validate();
        require(distance_m > 0.0, "gen_irs_user_channel: distance must be > 0");
        const int paths = stats.paths_irs_user;
        const double los_var = pathloss_variance(distance_m, stats.los_pathloss, rng);
        const double nlos_var = nlos_share(los_var, stats.rician_factor_db, paths - 1);

        CVector h = CVector::Zero(geom.size());
        for (int l = 0; l < paths; ++l)
        {
            const double az = draw_azimuth(rng);
            const double el = draw_elevation(rng);
            const cplx gain = rng.complex_normal(l == 0 ? los_var : nlos_var);
            h += gain * ura_response(az, el, geom);
        }
        return std::sqrt(static_cast<double>(geom.size()) / paths) * h;
    }

    BsIrsChannel gen_bs_irs_channel(const UlaGeometry &tx, const UraGeometry &rx, const ChannelStatistics &stats,
                                    double distance_m, RandomStream &rng)
    {
        tx.validate();
        rx.validate();
        stats.validate();
        require(distance_m > 0.0, "gen_bs_irs_channel: distance must be > 0");
        const int paths = stats.paths_bs_irs;
        const double scale = std::sqrt(static_cast<double>(tx.num_elements) * rx.size() / paths);
        const double los_var = pathloss_variance(distance_m, stats.los_pathloss, rng);
        const double nlos_var = nlos_share(los_var, stats.rician_factor_db, paths - 1);

        BsIrsChannel out;
        out.matrix = CMatrix::Zero(rx.size(), tx.num_elements);
        for (int l = 0; l < paths; ++l)
        {
            const double az = draw_azimuth(rng);
            const double el = draw_elevation(rng);
            const double aod = draw_azimuth(rng);
            const cplx gain = rng.complex_normal(l == 0 ? los_var : nlos_var);
            const CVector ar = ura_response(az, el, rx);
            const CVector bt = ula_response(aod, tx).conjugate(); // a_t^H as a transpose
            out.matrix.noalias() += (scale * gain) * ar * bt.transpose();
            if (l == 0)
                out.los = RankOneLink{scale * gain, ar, bt};
        }
        return out;
    }

    RankOneLink dominant_rank_one(const CMatrix &g, double tol, int max_iterations)
    {
        require(g.rows() >= 1 && g.cols() >= 1, "dominant_rank_one: empty matrix");
        RankOneLink out;
        Eigen::Index best_col = 0;
        g.colwise().norm().maxCoeff(&best_col);
        if (g.col(best_col).norm() == 0.0)
        {
            out.irs_steering = CVector::Unit(g.rows(), 0);
            out.bs_steering = CVector::Unit(g.cols(), 0);
            return out;
        }

        CVector u = g.col(best_col).normalized();
        CVector v = g.adjoint() * u;
        double sigma = v.norm();
        v /= sigma;
        for (int it = 0; it < max_iterations; ++it)
        {
            const CVector prev = v;
            u = g * v;
            u.normalize();
            v = g.adjoint() * u;
            sigma = v.norm();
            v /= sigma;
            if ((v - prev).norm() < tol)
                break;
        }
        // G ~= sigma u v^H = sigma u conj(v)^T
        out.gain = sigma;
        out.irs_steering = u;
        out.bs_steering = v.conjugate();
        return out;
    }

    LinkDistances single_irs_distances(const SingleIrsGeometry &g)
    {
        const double d1 = g.bs_irs_horizontal_m;
        const double dv = g.vertical_offset_m;
        const double dx = d1 - g.bs_user_horizontal_m;
        return {std::sqrt(d1 * d1 + dv * dv), std::sqrt(dx * dx + dv * dv)};
    }

    std::vector<double> multi_irs_offsets(const MultiIrsGeometry &g)
    {
        std::vector<double> x(static_cast<std::size_t>(g.num_irs));
        for (int k = 0; k < g.num_irs; ++k)
            x[k] = g.num_irs == 1 ? g.bs_first_irs_horizontal_m
                                  : g.bs_first_irs_horizontal_m + k * g.irs_span_m / (g.num_irs - 1);
        return x;
    }

    std::vector<LinkDistances> multi_irs_positions(const MultiIrsGeometry &g)
    {
        const double dv = g.vertical_offset_m;
        std::vector<LinkDistances> out;
        for (double x : multi_irs_offsets(g))
        {
            const double dx = x - g.bs_user_horizontal_m;
            out.push_back({std::sqrt(x * x + dv * dv), std::sqrt(dx * dx + dv * dv)});
        }
        return out;
    }
} // namespace irsbeam
