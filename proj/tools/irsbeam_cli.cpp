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


#include "irsbeam/analysis.hpp"
#include "irsbeam/config.hpp"
#include "irsbeam/harness.hpp"
#include "irsbeam/instance_io.hpp"
#include "irsbeam/precoding.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace irsbeam;

namespace
{
    constexpr int kExitOk = 0;
    constexpr int kExitConfig = 1;
    constexpr int kExitSolver = 2;

    struct Common
    {
        std::string config_path;
        std::string out_path;
        std::optional<std::uint64_t> seed;
        std::vector<std::string> overrides;
        std::optional<std::string> solvers;
        std::optional<int> bits;
        std::optional<int> trials;
        std::optional<int> workers;
    };

    void add_common(CLI::App *cmd, Common &c)
    {
        cmd->add_option("--config", c.config_path, "Experiment config file")->required();
        cmd->add_option("--out", c.out_path, "Output CSV (default: standard output)");
        cmd->add_option("--seed", c.seed, "Master seed");
        cmd->add_option("--override", c.overrides, "key=value, applied after the file (repeatable)");
        cmd->add_option("--solvers", c.solvers, "Comma-separated solver list");
        cmd->add_option("--bits", c.bits, "Phase-shifter resolution in bits")->check(CLI::Range(1, 16));
        cmd->add_option("--trials", c.trials, "Monte Carlo trials per sweep point");
        cmd->add_option("--workers", c.workers, "OpenMP threads (0: default)");
    }

    std::vector<std::string> collect_overrides(const Common &c, bool verify)
    {
        std::vector<std::string> ov = c.overrides;
        if (c.seed)
            ov.push_back("seed=" + std::to_string(*c.seed));
        if (c.solvers)
            ov.push_back("solvers=" + *c.solvers);
        if (c.bits)
            ov.push_back(verify ? "verify_bits=1:1:" + std::to_string(*c.bits) : "phase_bits=" + std::to_string(*c.bits));
        if (c.trials)
            ov.push_back("trials=" + std::to_string(*c.trials));
        if (c.workers)
            ov.push_back("workers=" + std::to_string(*c.workers));
        return ov;
    }

    // Writes to the file, or standard output when the path is empty.
    void emit(const std::string &path, const std::string &text)
    {
        if (path.empty())
        {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw ConfigError("cannot open output file '" + path + "'");
        out << text;
        if (!out)
            throw ConfigError("failed writing '" + path + "'");
    }

    RunOptions progress_options()
    {
        RunOptions o;
        o.progress = [](std::size_t done, std::size_t total) { std::cerr << "sweep " << done << "/" << total << "\n"; };
        return o;
    }

    int cmd_run(const Common &c)
    {
        const ExperimentConfig cfg = load_config(c.config_path, collect_overrides(c, false));
        std::ostringstream os;
        write_csv(os, run_experiment(cfg, progress_options()));
        emit(c.out_path, os.str());
        return kExitOk;
    }

    int cmd_verify(const Common &c)
    {
        const ExperimentConfig cfg = load_config(c.config_path, collect_overrides(c, true));
        std::ostringstream os;
        write_scaling_csv(os, verify_scaling(cfg, progress_options()));
        emit(c.out_path, os.str());
        return kExitOk;
    }

    struct SolveArgs
    {
        std::string instance;
        std::string out_path;
        std::string solver = "analytical";
        std::optional<int> bits;
        std::uint64_t seed = 1;
        double power_dbm = 30.0;
        int randomizations = 1000;
    };

    int cmd_solve(const SolveArgs &a)
    {
        ChannelSet ch = load_instance(a.instance);
        std::vector<RankOneLink> links = ch.rank_one;
        if (links.empty())
            for (const CMatrix &g : ch.bs_irs)
                links.push_back(dominant_rank_one(g));

        SolverSpec spec;
        try
        {
            spec = parse_solver(a.solver);
        }
        catch (const InvalidArgument &e)
        {
            throw ConfigError(std::string("--solvers: ") + e.what());
        }
        if (a.bits)
            spec.bits = *a.bits;
        const double p = dbm_to_watts(a.power_dbm);
        std::ostringstream os;
        char buf[96];
        auto num = [&](double v) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return std::string(buf);
        };

        if (spec.kind == SolverSpec::Kind::UpperBound)
        {
            if (ch.num_irs() == 0)
                throw ConfigError("upper_bound needs at least one IRS");
            os << "solver upper_bound\nreceived_power " << num(sdr_upper_bound(ch, links, p)) << "\n";
            emit(a.out_path, os.str());
            return kExitOk;
        }

        BeamformingSolution sol;
        switch (spec.kind)
        {
        case SolverSpec::Kind::Mrt:
            sol = mrt_no_irs(ch.bs_user, p);
            break;
        case SolverSpec::Kind::ClosedForm:
            if (ch.num_irs() != 1)
                throw ConfigError("closed_form needs exactly one IRS");
            sol = solve_single_irs(ch, links.front(), p);
            break;
        case SolverSpec::Kind::Analytical:
        case SolverSpec::Kind::Sdr:
        {
            if (ch.num_irs() == 0)
                throw ConfigError(spec.label() + " needs at least one IRS");
            if (spec.kind == SolverSpec::Kind::Analytical)
            {
                sol = solve_multi_irs_analytical(ch, links, p);
            }
            else
            {
                RandomStream rng(a.seed);
                sol = solve_multi_irs_sdr(ch, links, p, a.randomizations, rng);
            }
            break;
        }
        default:
            break;
        }
        if (spec.bits && ch.num_irs() > 0 && spec.kind != SolverSpec::Kind::Mrt)
            sol = complete_with_mrt(quantize_phases(sol.phase_config, *spec.bits), rank_one_channels(ch, links), p,
                                    sol.solver);

        os << "solver " << to_string(sol.solver) << (spec.bits ? ":" + std::to_string(*spec.bits) : "") << "\n";
        os << "received_power " << num(sol.received_power) << "\n";
        if (spec.kind != SolverSpec::Kind::Mrt && ch.num_irs() > 0)
            os << "received_power_full " << num(received_power(sol.precoder, sol.phase_config, ch)) << "\n";
        os << "precoder " << sol.precoder.size() << "\n";
        for (Eigen::Index i = 0; i < sol.precoder.size(); ++i)
            os << num(sol.precoder[i].real()) << "," << num(sol.precoder[i].imag()) << "\n";
        for (std::size_t k = 0; k < sol.phase_config.phases.size(); ++k)
        {
            const RVector &t = sol.phase_config.phases[k];
            os << "phases " << k << " " << t.size() << "\n";
            for (Eigen::Index m = 0; m < t.size(); ++m)
                os << num(t[m]) << "\n";
        }
        emit(a.out_path, os.str());
        return kExitOk;
    }

    int cmd_eta(int max_bits)
    {
        for (int b = 1; b <= max_bits; ++b)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%d %.4f", b, quantization_ratio(b));
            std::cout << buf << "\n";
        }
        return kExitOk;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Joint active and passive beamforming for IRS-assisted mmWave links"};
    app.require_subcommand(1);

    Common run_args, verify_args;
    auto *run = app.add_subcommand("run", "Run a Monte Carlo sweep and write the aggregate CSV");
    add_common(run, run_args);
    auto *verify = app.add_subcommand("verify-scaling", "Compare simulated mean power with the closed forms");
    add_common(verify, verify_args);

    SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "Solve one channel instance and print w, phases and power");
    solve->add_option("--instance", solve_args.instance, "Channel instance file")->required();
    solve->add_option("--out", solve_args.out_path, "Output file (default: standard output)");
    solve->add_option("--solvers", solve_args.solver, "One of mrt, closed_form, analytical, sdr, upper_bound");
    solve->add_option("--bits", solve_args.bits, "Quantize the phases to this many bits")->check(CLI::Range(1, 16));
    solve->add_option("--seed", solve_args.seed, "Seed for SDR randomization");
    solve->add_option("--power-dbm", solve_args.power_dbm, "Transmit power in dBm");
    solve->add_option("--randomizations", solve_args.randomizations, "SDR randomization samples")
        ->check(CLI::PositiveNumber);

    int eta_bits = 3;
    auto *eta = app.add_subcommand("eta", "Print the quantization power ratio for 1..B bits");
    eta->add_option("--bits", eta_bits, "Largest resolution B")->check(CLI::Range(1, 30));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitConfig;
    }

    try
    {
        if (*run)
            return cmd_run(run_args);
        if (*verify)
            return cmd_verify(verify_args);
        if (*solve)
            return cmd_solve(solve_args);
        if (*eta)
            return cmd_eta(eta_bits);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "irsbeam: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const InvalidArgument &e)
    {
        std::cerr << "irsbeam: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "irsbeam: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitConfig;
}
