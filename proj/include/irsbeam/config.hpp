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

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace irsbeam
{
    enum class Scenario
    {
        SingleIrsSweepDistance,
        SingleIrsSweepM,
        MultiIrsSweepDistance,
        MultiIrsSweepM,
        BlockageSweep,
    };

    /// Geometric: full SV generators. Statistical: Rayleigh h_d / h_r and exactly rank-one G with a
    /// fixed |rho|, the model under which the expected-power formulas hold.
    enum class ChannelModel
    {
        Geometric,
        Statistical,
    };

    /// Channels against which a designed (w, Theta) is scored.
    enum class Evaluation
    {
        Full,
        RankOne,
    };

    struct SolverSpec
    {
        enum class Kind
        {
            Mrt,
            ClosedForm,
            Analytical,
            Sdr,
            UpperBound,
        };
        Kind kind = Kind::Mrt;
        std::optional<int> bits; // quantize the IRS phases, then redo MRT

        /// Column label, e.g. "analytical" or "closed_form:2".
        std::string label() const;
    };

    /// Parses "mrt", "closed_form", "analytical", "sdr", "upper_bound", each with an optional ":b".
    SolverSpec parse_solver(const std::string &token);

    /// Linear-amplitude overrides for the statistical model (default: median path gains of the geometry).
    struct StatisticalOverrides
    {
        std::optional<double> bs_user_sigma;
        std::optional<double> irs_user_sigma;
        std::optional<double> bs_irs_gain;
    };

    struct ExperimentConfig
    {
        Scenario scenario = Scenario::SingleIrsSweepDistance;
        ChannelModel channel_model = ChannelModel::Geometric;
        Evaluation evaluation = Evaluation::Full;

        UlaGeometry bs_array{64, 0.5};
        UraGeometry irs_array{20, 10, 0.5}; // rows = M_z, cols = M_y
        ChannelStatistics channel_stats;
        SingleIrsGeometry single;
        MultiIrsGeometry multi;

        double transmit_power_dbm = 30.0;
        double noise_power_dbm = -90.0;
        std::vector<SolverSpec> solvers;
        std::vector<double> sweep_values;
        int trials = 1000;
        std::uint64_t seed = 1;
        double outage_threshold = 0.5;
        int sdr_randomizations = 1000;
        int workers = 0; // 0: OpenMP default
        StatisticalOverrides statistical;
        std::vector<int> verify_bits{1, 2};

        bool is_single() const
        {
            return scenario == Scenario::SingleIrsSweepDistance || scenario == Scenario::SingleIrsSweepM;
        }
        bool sweeps_m() const { return scenario == Scenario::SingleIrsSweepM || scenario == Scenario::MultiIrsSweepM; }
        int num_irs() const { return is_single() ? 1 : multi.num_irs; }

        /// Throws ConfigError naming the offending field.
        void validate() const;
    };

    std::string to_string(Scenario s);

    /// Flat "key = value" text, '#' starts a comment. Overrides ("key=value") replace file values and are
    /// applied before validation. Unknown or repeated keys are errors that cite the line.
    ExperimentConfig parse_config(std::istream &in, const std::string &source_name,
                                  const std::vector<std::string> &overrides = {});

    ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides = {});

    /// "a,b,c" or "start:step:stop" (inclusive, tolerant to rounding at the end point).
    std::vector<double> parse_value_list(const std::string &text);
} // namespace irsbeam
