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

#include "irsbeam/analysis.hpp"
#include "irsbeam/config.hpp"
#include "irsbeam/precoding.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace irsbeam
{
    struct AggregateRow
    {
        double sweep_value = 0.0;
        std::string solver;
        double mean_snr_db = 0.0;     // mean of per-trial 10 log10(gamma / sigma^2), finite trials only
        double mean_throughput = 0.0; // bit/s/Hz
        double outage = 0.0;
        int trials_used = 0;
        int trials_skipped = 0;
    };

    /// Outcome of one solver on one trial.
    struct TrialRecord
    {
        double received_power = 0.0; // watts
        double snr_db = 0.0;         // -inf when the power is zero
        double throughput = 0.0;
        bool skipped = false;        // degenerate channel
        bool blocked_direct = false;
        std::vector<bool> blocked_irs;
    };

    struct RunOptions
    {
        Execution execution = Execution::Parallel;
        /// Called after each sweep point with (points done, total points).
        std::function<void(std::size_t, std::size_t)> progress;
    };

    /// One channel realization with its rank-one links, deterministic in (seed, sweep_index, trial_index).
    struct TrialChannels
    {
        ChannelSet full;
        std::vector<RankOneLink> links;
        ScalingLawParams statistics; // populated for the statistical model
    };

    TrialChannels draw_trial_channels(const ExperimentConfig &cfg, double sweep_value, RandomStream &rng);

    /// All solvers on one trial. Index i of the result matches cfg.solvers[i].
    std::vector<TrialRecord> run_trial(const ExperimentConfig &cfg, std::size_t sweep_index, std::size_t trial_index);

    /// Per-trial records of every solver at one sweep point, indexed [trial][solver].
    std::vector<std::vector<TrialRecord>> run_sweep_point(const ExperimentConfig &cfg, std::size_t sweep_index,
                                                          Execution exec);

    /// Sweeps every point and aggregates. Output does not depend on Execution or the worker count.
    /// Throws SolverFailure when more than 1% of a solver's trials are degenerate.
    std::vector<AggregateRow> run_experiment(const ExperimentConfig &cfg, const RunOptions &opts = {});

    /// run_experiment for cfg.scenario == BlockageSweep; the sweep values are blockage probabilities.
    std::vector<AggregateRow> run_blockage_experiment(const ExperimentConfig &cfg, const RunOptions &opts = {});

    struct ScalingRow
    {
        int num_elements = 0;
        int bits = 0; // 0: continuous phases
        double simulated_mean_power = 0.0;
        double predicted_mean_power = 0.0;
        double relative_error = 0.0;
        double simulated_mean_snr_db = 0.0;
        bool flagged = false; // relative error above 5%
    };

    /// Monte Carlo mean received power of the analytical solution against the closed-form expectations,
    /// for every M in the sweep and every bit width in cfg.verify_bits. Requires the statistical model and
    /// an M sweep.
    std::vector<ScalingRow> verify_scaling(const ExperimentConfig &cfg, const RunOptions &opts = {});

    /// Fixed-order pairwise summation; the result depends only on the sequence.
    double pairwise_sum(const double *data, std::size_t n);

    std::string format_double(double v);
    void write_csv(std::ostream &out, const std::vector<AggregateRow> &rows);
    void write_scaling_csv(std::ostream &out, const std::vector<ScalingRow> &rows);
} // namespace irsbeam
