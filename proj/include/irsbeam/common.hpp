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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irsbeam
{
    using cplx = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CRowVector = Eigen::RowVectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;

    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    // Error taxonomy. Every public entry point throws one of these.
    class InvalidArgument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // The combined effective channel vanished, so no precoder direction exists.
    class DegenerateChannel : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class SolverFailure : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Exhaustive oracles refuse search spaces beyond their guard.
    class ProblemTooLarge : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed or inconsistent experiment configuration; the message names the key and line.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Selects the OpenMP kernel or the serial reference loop. Both produce identical results.
    enum class Execution
    {
        Serial,
        Parallel,
    };

    // Argument of a complex number with arg(0) := 0.
    inline double arg0(cplx z)
    {
        return (z == cplx(0.0, 0.0)) ? 0.0 : std::arg(z);
    }

    // Maps any real angle into [0, 2*pi).
    inline double wrap_phase(double theta)
    {
        double r = std::fmod(theta, kTwoPi);
        if (r < 0.0)
            r += kTwoPi;
        if (r >= kTwoPi) // fmod of a tiny negative can round up to 2*pi
            r = 0.0;
        return r;
    }

    inline cplx unit_phasor(double theta)
    {
        return std::polar(1.0, theta);
    }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

    // dBm to watts.
    inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

    inline void require(bool cond, const std::string &what)
    {
        if (!cond)
            throw InvalidArgument(what);
    }
} // namespace irsbeam
