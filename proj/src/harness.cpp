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


#include "irsbeam/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>

namespace irsbeam
{
    namespace
    {
        // Sub-stream tags under derive(seed, sweep_index, trial_index, tag).
        constexpr std::uint64_t kChannelStream = 0;
        constexpr std::uint64_t kBlockageStream = 1;
        constexpr std::uint64_t kFirstSolverStream = 2;

        struct Deployment
        {
            double bs_user_m = 0.0;
            std::vector<LinkDistances> irs;
            UraGeometry ura;
        };

        Deployment deployment(const ExperimentConfig &cfg, double value)
        {
            Deployment d;
            d.ura = cfg.irs_array;
            if (cfg.sweeps_m())
                d.ura.rows = static_cast<int>(std::llround(value)) / cfg.irs_array.cols;
            if (cfg.is_single())
            {
                SingleIrsGeometry g = cfg.single;
                if (cfg.scenario == Scenario::SingleIrsSweepDistance)
                    g.bs_user_horizontal_m = value;
                d.bs_user_m = g.bs_user_horizontal_m;
                d.irs.push_back(single_irs_distances(g));
            }
            else
            {
                MultiIrsGeometry g = cfg.multi;
                if (cfg.scenario == Scenario::MultiIrsSweepDistance)
                    g.bs_user_horizontal_m = value;
                d.bs_user_m = g.bs_user_horizontal_m;
                d.irs = multi_irs_positions(g);
            }
            d.bs_user_m = clamp_distance(d.bs_user_m);
            for (LinkDistances &l : d.irs)
            {
                l.bs_irs_m = clamp_distance(l.bs_irs_m);
                l.irs_user_m = clamp_distance(l.irs_user_m);
            }
            return d;
        }

        ScalingLawParams statistical_params(const ExperimentConfig &cfg, const Deployment &d)
        {
            const ChannelStatistics &st = cfg.channel_stats;
            const StatisticalOverrides &ov = cfg.statistical;
            ScalingLawParams s;
            s.num_antennas = cfg.bs_array.num_elements;
            s.num_elements = d.ura.size();
            s.bs_user_sigma = ov.bs_user_sigma.value_or(std::sqrt(median_pathloss(d.bs_user_m, st.nlos_pathloss)));
            for (const LinkDistances &l : d.irs)
            {
                const double rho = ov.bs_irs_gain.value_or(std::sqrt(median_pathloss(l.bs_irs_m, st.los_pathloss)));
                s.irs_user_sigma.push_back(
                    ov.irs_user_sigma.value_or(std::sqrt(median_pathloss(l.irs_user_m, st.los_pathloss))));
                s.los_gain_mean_abs.push_back(rho);
                s.los_gain_mean_sq.push_back(rho * rho);
            }
            return s;
        }

        double solve_and_score(const ExperimentConfig &cfg, const SolverSpec &spec, const ChannelSet &ch,
                               const std::vector<RankOneLink> &links, double p, RandomStream &rng)
        {
            using Kind = SolverSpec::Kind;
            if (spec.kind == Kind::Mrt || ch.num_irs() == 0)
                return mrt_no_irs(ch.bs_user, p).received_power;
            if (spec.kind == Kind::UpperBound)
                return sdr_upper_bound(ch, links, p);

            BeamformingSolution sol;
            switch (spec.kind)
            {
            case Kind::ClosedForm:
                sol = solve_single_irs(ch, links.front(), p);
                break;
            case Kind::Analytical:
                sol = solve_multi_irs_analytical(ch, links, p);
                break;
            case Kind::Sdr:
                sol = solve_multi_irs_sdr(ch, links, p, cfg.sdr_randomizations, rng);
                break;
            default:
                break;
            }
            if (spec.bits)
                sol = complete_with_mrt(quantize_phases(sol.phase_config, *spec.bits), rank_one_channels(ch, links), p,
                                        sol.solver);
            if (cfg.evaluation == Evaluation::RankOne)
                return received_power(sol.precoder, sol.phase_config, rank_one_channels(ch, links));
            return received_power(sol.precoder, sol.phase_config, ch);
        }

        struct SolverSummary
        {
            double mean_snr_db = 0.0;
            double mean_throughput = 0.0;
            double mean_power = 0.0;
            double outage = 0.0;
            int used = 0;
            int skipped = 0;
        };

        SolverSummary summarize(const std::vector<std::vector<TrialRecord>> &records, std::size_t solver,
                                double threshold)
        {
            std::vector<double> snr, tput, power;
            SolverSummary s;
            for (const auto &trial : records)
            {
                const TrialRecord &r = trial[solver];
                if (r.skipped)
                {
                    ++s.skipped;
                    continue;
                }
                tput.push_back(r.throughput);
                power.push_back(r.received_power);
                if (std::isfinite(r.snr_db))
                    snr.push_back(r.snr_db);
            }
            s.used = static_cast<int>(tput.size());
            const double nan = std::numeric_limits<double>::quiet_NaN();
            s.mean_snr_db = snr.empty() ? -std::numeric_limits<double>::infinity()
                                        : pairwise_sum(snr.data(), snr.size()) / static_cast<double>(snr.size());
            s.mean_throughput = tput.empty() ? nan : pairwise_sum(tput.data(), tput.size()) / tput.size();
            s.mean_power = power.empty() ? nan : pairwise_sum(power.data(), power.size()) / power.size();
            s.outage = tput.empty() ? nan : outage_probability(tput, threshold);
            return s;
        }

        void check_skip_rate(const SolverSummary &s, const std::string &label, double value, int trials)
        {
            if (static_cast<double>(s.skipped) > 0.01 * trials)
                throw SolverFailure("harness: solver '" + label + "' skipped " + std::to_string(s.skipped) + " of " +
                                    std::to_string(trials) + " trials at sweep value " + format_double(value) +
                                    " (limit 1%)");
        }
    } // namespace

    double pairwise_sum(const double *data, std::size_t n)
    {
        if (n <= 8)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                s += data[i];
            return s;
        }
        const std::size_t half = n / 2;
        return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
    }

    TrialChannels draw_trial_channels(const ExperimentConfig &cfg, double sweep_value, RandomStream &rng)
    {
        const Deployment d = deployment(cfg, sweep_value);
        const ChannelStatistics &st = cfg.channel_stats;
        const UlaGeometry &ula = cfg.bs_array;
        TrialChannels out;

        if (cfg.channel_model == ChannelModel::Geometric)
        {
            out.full.bs_user = gen_bs_user_channel(ula, st, d.bs_user_m, rng);
            for (const LinkDistances &l : d.irs)
            {
                BsIrsChannel g = gen_bs_irs_channel(ula, d.ura, st, l.bs_irs_m, rng);
                out.full.irs_user.push_back(gen_irs_user_channel(d.ura, st, l.irs_user_m, rng));
                out.full.bs_irs.push_back(std::move(g.matrix));
                out.links.push_back(std::move(g.los));
            }
        }
        else
        {
            out.statistics = statistical_params(cfg, d);
            const ScalingLawParams &s = out.statistics;
            const double nm = static_cast<double>(ula.num_elements) * d.ura.size();
            out.full.bs_user = rng.complex_normal_vector(ula.num_elements, s.bs_user_sigma * s.bs_user_sigma);
            for (std::size_t k = 0; k < d.irs.size(); ++k)
            {
                const double az = rng.uniform(-kPi / 2.0, kPi / 2.0);
                const double el = rng.uniform(-kPi / 4.0, kPi / 4.0);
                const double aod = rng.uniform(-kPi / 2.0, kPi / 2.0);
                const double phase = rng.uniform(0.0, kTwoPi);
                RankOneLink link;
                link.gain = std::sqrt(nm) * s.los_gain_mean_abs[k] * unit_phasor(phase);
                link.irs_steering = ura_response(az, el, d.ura);
                link.bs_steering = ula_response(aod, ula).conjugate();
                const double sr = s.irs_user_sigma[k];
                out.full.irs_user.push_back(rng.complex_normal_vector(d.ura.size(), sr * sr));
                out.full.bs_irs.push_back(link.matrix());
                out.links.push_back(std::move(link));
            }
        }
        out.full.rank_one = out.links;
        return out;
    }

    std::vector<TrialRecord> run_trial(const ExperimentConfig &cfg, std::size_t sweep_index, std::size_t trial_index)
    {
        const double value = cfg.sweep_values.at(sweep_index);
        RandomStream rng = RandomStream::derive(cfg.seed, sweep_index, trial_index, kChannelStream);
        TrialChannels tc = draw_trial_channels(cfg, value, rng);
        const double p = dbm_to_watts(cfg.transmit_power_dbm);
        const double noise = dbm_to_watts(cfg.noise_power_dbm);

        bool blocked_direct = false;
        std::vector<bool> blocked_irs(tc.links.size(), false);
        ChannelSet ch = tc.full;
        std::vector<RankOneLink> links = tc.links;
        if (cfg.scenario == Scenario::BlockageSweep)
        {
            RandomStream b = RandomStream::derive(cfg.seed, sweep_index, trial_index, kBlockageStream);
            blocked_direct = b.bernoulli(value);
            for (std::size_t k = 0; k < blocked_irs.size(); ++k)
                blocked_irs[k] = b.bernoulli(value);
            // Blocked IRS-user links carry no energy; the IRS drops out and the solvers re-run on the rest.
            ChannelSet alive;
            alive.bs_user = blocked_direct ? CVector::Zero(ch.bs_user.size()) : ch.bs_user;
            std::vector<RankOneLink> alive_links;
            for (std::size_t k = 0; k < blocked_irs.size(); ++k)
            {
                if (blocked_irs[k])
                    continue;
                alive.bs_irs.push_back(ch.bs_irs[k]);
                alive.irs_user.push_back(ch.irs_user[k]);
                alive_links.push_back(links[k]);
            }
            alive.rank_one = alive_links;
            ch = std::move(alive);
            links = std::move(alive_links);
        }
        const bool any_blocked = blocked_direct || std::find(blocked_irs.begin(), blocked_irs.end(), true) != blocked_irs.end();

        std::vector<TrialRecord> out(cfg.solvers.size());
        for (std::size_t i = 0; i < cfg.solvers.size(); ++i)
        {
            TrialRecord &r = out[i];
            r.blocked_direct = blocked_direct;
            r.blocked_irs = blocked_irs;
            RandomStream solver_rng = RandomStream::derive(cfg.seed, sweep_index, trial_index, kFirstSolverStream + i);
            try
            {
                r.received_power = solve_and_score(cfg, cfg.solvers[i], ch, links, p, solver_rng);
            }
            catch (const DegenerateChannel &)
            {
                // A link killed by blockage is a zero-power outcome, not a degenerate draw.
                if (any_blocked)
                    r.received_power = 0.0;
                else
                    r.skipped = true;
            }
            if (!r.skipped)
            {
                r.snr_db = r.received_power > 0.0 ? 10.0 * std::log10(r.received_power / noise)
                                                  : -std::numeric_limits<double>::infinity();
                r.throughput = throughput(r.received_power, noise);
            }
        }
        return out;
    }

    std::vector<std::vector<TrialRecord>> run_sweep_point(const ExperimentConfig &cfg, std::size_t sweep_index,
                                                          Execution exec)
    {
        const std::size_t trials = static_cast<std::size_t>(cfg.trials);
        std::vector<std::vector<TrialRecord>> records(trials);
        if (exec == Execution::Serial)
        {
            for (std::size_t t = 0; t < trials; ++t)
                records[t] = run_trial(cfg, sweep_index, t);
            return records;
        }

        std::vector<std::exception_ptr> errors(trials);
        const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long t = 0; t < static_cast<long>(trials); ++t)
        {
            try
            {
                records[static_cast<std::size_t>(t)] = run_trial(cfg, sweep_index, static_cast<std::size_t>(t));
            }
            catch (...)
            {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        }
        // Report the failure of the lowest trial index, as the serial loop would.
        for (const std::exception_ptr &e : errors)
            if (e)
                std::rethrow_exception(e);
        return records;
    }

    std::vector<AggregateRow> run_experiment(const ExperimentConfig &cfg, const RunOptions &opts)
    {
        cfg.validate();
        std::vector<AggregateRow> rows;
        for (std::size_t s = 0; s < cfg.sweep_values.size(); ++s)
        {
            const auto records = run_sweep_point(cfg, s, opts.execution);
            for (std::size_t i = 0; i < cfg.solvers.size(); ++i)
            {
                const SolverSummary sum = summarize(records, i, cfg.outage_threshold);
                const std::string label = cfg.solvers[i].label();
                check_skip_rate(sum, label, cfg.sweep_values[s], cfg.trials);
                rows.push_back(AggregateRow{cfg.sweep_values[s], label, sum.mean_snr_db, sum.mean_throughput,
                                            sum.outage, sum.used, sum.skipped});
            }
            if (opts.progress)
                opts.progress(s + 1, cfg.sweep_values.size());
        }
        return rows;
    }

    std::vector<AggregateRow> run_blockage_experiment(const ExperimentConfig &cfg, const RunOptions &opts)
    {
        if (cfg.scenario != Scenario::BlockageSweep)
            throw ConfigError("config: field 'scenario': run_blockage_experiment needs blockage_sweep");
        return run_experiment(cfg, opts);
    }

    std::vector<ScalingRow> verify_scaling(const ExperimentConfig &cfg, const RunOptions &opts)
    {
        cfg.validate();
        if (cfg.channel_model != ChannelModel::Statistical)
            throw ConfigError("config: field 'channel_model': verify-scaling requires 'statistical'");
        if (!cfg.sweeps_m())
            throw ConfigError("config: field 'scenario': verify-scaling requires an M sweep");

        ExperimentConfig run = cfg;
        run.evaluation = Evaluation::RankOne;
        run.solvers = {SolverSpec{SolverSpec::Kind::Analytical, std::nullopt}};
        for (int b : cfg.verify_bits)
            run.solvers.push_back(SolverSpec{SolverSpec::Kind::Analytical, b});

        const double p = dbm_to_watts(cfg.transmit_power_dbm);
        std::vector<ScalingRow> rows;
        for (std::size_t s = 0; s < cfg.sweep_values.size(); ++s)
        {
            const ScalingLawParams law = statistical_params(run, deployment(run, cfg.sweep_values[s]));
            const auto records = run_sweep_point(run, s, opts.execution);
            for (std::size_t i = 0; i < run.solvers.size(); ++i)
            {
                const SolverSummary sum = summarize(records, i, run.outage_threshold);
                check_skip_rate(sum, run.solvers[i].label(), cfg.sweep_values[s], run.trials);
                ScalingRow row;
                row.num_elements = law.num_elements;
                row.bits = run.solvers[i].bits.value_or(0);
                row.simulated_mean_power = sum.mean_power;
                row.predicted_mean_power =
                    p * (row.bits == 0 ? expected_power_multi(law) : expected_power_discrete(law, row.bits));
                row.relative_error =
                    std::abs(row.simulated_mean_power - row.predicted_mean_power) / row.predicted_mean_power;
                row.simulated_mean_snr_db = sum.mean_snr_db;
                row.flagged = row.relative_error > 0.05;
                rows.push_back(row);
            }
            if (opts.progress)
                opts.progress(s + 1, cfg.sweep_values.size());
        }
        return rows;
    }

    std::string format_double(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    void write_csv(std::ostream &out, const std::vector<AggregateRow> &rows)
    {
        out << "sweep_value,solver,mean_snr_db,mean_throughput,outage,trials_used,trials_skipped\n";
        for (const AggregateRow &r : rows)
            out << format_double(r.sweep_value) << ',' << r.solver << ',' << format_double(r.mean_snr_db) << ','
                << format_double(r.mean_throughput) << ',' << format_double(r.outage) << ',' << r.trials_used << ','
                << r.trials_skipped << '\n';
    }

    void write_scaling_csv(std::ostream &out, const std::vector<ScalingRow> &rows)
    {
        out << "M,bits,simulated_mean_power,predicted_mean_power,relative_error,simulated_mean_snr_db,flag\n";
        for (const ScalingRow &r : rows)
            out << r.num_elements << ',' << r.bits << ',' << format_double(r.simulated_mean_power) << ','
                << format_double(r.predicted_mean_power) << ',' << format_double(r.relative_error) << ','
                << format_double(r.simulated_mean_snr_db) << ',' << (r.flagged ? "over_5pct" : "ok") << '\n';
    }
} // namespace irsbeam
