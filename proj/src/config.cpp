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


#include "irsbeam/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace irsbeam
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return "";
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string cur;
            std::istringstream is(s);
            while (std::getline(is, cur, sep))
                out.push_back(trim(cur));
            return out;
        }

        bool parse_double(const std::string &s, double &out)
        {
            const std::string t = trim(s);
            if (t.empty())
                return false;
            const char *first = t.data();
            const char *last = t.data() + t.size();
            if (*first == '+')
                ++first;
            const auto res = std::from_chars(first, last, out);
            return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
        }

        bool parse_int(const std::string &s, long long &out)
        {
            const std::string t = trim(s);
            if (t.empty())
                return false;
            const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
            return res.ec == std::errc() && res.ptr == t.data() + t.size();
        }

        struct Entry
        {
            std::string value;
            std::string where; // "file:line" or "override"
        };

        const std::set<std::string> &known_keys()
        {
            static const std::set<std::string> keys{
                "scenario", "channel_model", "evaluation", "num_antennas", "element_spacing", "irs_rows",
                "irs_cols", "num_irs", "bs_irs_horizontal_m", "vertical_offset_m", "bs_user_horizontal_m",
                "irs_span_m", "paths_bs_user", "paths_irs_user", "paths_bs_irs", "rician_factor_db",
                "los_intercept_db", "los_exponent", "los_shadow_sigma_db", "nlos_intercept_db", "nlos_exponent",
                "nlos_shadow_sigma_db", "transmit_power_dbm", "noise_power_dbm", "solvers", "phase_bits",
                "sweep_values", "trials", "seed", "outage_threshold", "sdr_randomizations", "workers",
                "stat_bs_user_sigma", "stat_irs_user_sigma", "stat_bs_irs_gain", "verify_bits"};
            return keys;
        }

        class Reader
        {
        public:
            explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

            bool has(const std::string &key) const { return entries_.count(key) != 0; }

            [[noreturn]] void fail(const std::string &key, const std::string &what) const
            {
                const auto it = entries_.find(key);
                const std::string where = it == entries_.end() ? std::string("config") : it->second.where;
                throw ConfigError(where + ": key '" + key + "': " + what);
            }

            std::string text(const std::string &key, const std::string &fallback) const
            {
                const auto it = entries_.find(key);
                return it == entries_.end() ? fallback : it->second.value;
            }

            double real(const std::string &key, double fallback) const
            {
                if (!has(key))
                    return fallback;
                double v = 0.0;
                if (!parse_double(entries_.at(key).value, v))
                    fail(key, "expected a finite number, got '" + entries_.at(key).value + "'");
                return v;
            }

            std::optional<double> optional_real(const std::string &key) const
            {
                if (!has(key))
                    return std::nullopt;
                return real(key, 0.0);
            }

            long long integer(const std::string &key, long long fallback) const
            {
                if (!has(key))
                    return fallback;
                long long v = 0;
                if (!parse_int(entries_.at(key).value, v))
                    fail(key, "expected an integer, got '" + entries_.at(key).value + "'");
                return v;
            }

            std::uint64_t unsigned64(const std::string &key, std::uint64_t fallback) const
            {
                if (!has(key))
                    return fallback;
                const std::string t = trim(entries_.at(key).value);
                std::uint64_t v = 0;
                const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
                if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
                    fail(key, "expected an unsigned 64-bit integer, got '" + t + "'");
                return v;
            }

        private:
            std::map<std::string, Entry> entries_;
        };

        Scenario parse_scenario(const Reader &r)
        {
            const std::string s = r.text("scenario", "");
            if (s == "single_irs_sweep_distance")
                return Scenario::SingleIrsSweepDistance;
            if (s == "single_irs_sweep_m")
                return Scenario::SingleIrsSweepM;
            if (s == "multi_irs_sweep_distance")
                return Scenario::MultiIrsSweepDistance;
            if (s == "multi_irs_sweep_m")
                return Scenario::MultiIrsSweepM;
            if (s == "blockage_sweep")
                return Scenario::BlockageSweep;
            if (s.empty())
                throw ConfigError("config: key 'scenario' is required");
            r.fail("scenario", "unknown scenario '" + s + "'");
        }

        std::vector<SolverSpec> default_solvers(Scenario s)
        {
            std::vector<std::string> names;
            switch (s)
            {
            case Scenario::SingleIrsSweepDistance:
            case Scenario::SingleIrsSweepM:
                names = {"mrt", "closed_form", "upper_bound"};
                break;
            case Scenario::MultiIrsSweepDistance:
            case Scenario::MultiIrsSweepM:
                names = {"mrt", "analytical", "sdr", "upper_bound"};
                break;
            case Scenario::BlockageSweep:
                names = {"analytical"};
                break;
            }
            std::vector<SolverSpec> out;
            for (const auto &n : names)
                out.push_back(parse_solver(n));
            return out;
        }

        ExperimentConfig build(const Reader &r)
        {
            ExperimentConfig c;
            c.scenario = parse_scenario(r);
            const bool single = c.is_single();

            const std::string model = r.text("channel_model", "geometric");
            if (model == "geometric")
                c.channel_model = ChannelModel::Geometric;
            else if (model == "statistical")
                c.channel_model = ChannelModel::Statistical;
            else
                r.fail("channel_model", "expected 'geometric' or 'statistical'");

            const std::string eval = r.text("evaluation", "full");
            if (eval == "full")
                c.evaluation = Evaluation::Full;
            else if (eval == "rank_one")
                c.evaluation = Evaluation::RankOne;
            else
                r.fail("evaluation", "expected 'full' or 'rank_one'");

            const double spacing = r.real("element_spacing", 0.5);
            c.bs_array = UlaGeometry{static_cast<int>(r.integer("num_antennas", 64)), spacing};
            c.irs_array = UraGeometry{static_cast<int>(r.integer("irs_rows", 20)),
                                      static_cast<int>(r.integer("irs_cols", c.sweeps_m() ? 20 : 10)), spacing};

            ChannelStatistics &st = c.channel_stats;
            st.paths_bs_user = static_cast<int>(r.integer("paths_bs_user", 4));
            st.paths_irs_user = static_cast<int>(r.integer("paths_irs_user", 4));
            st.paths_bs_irs = static_cast<int>(r.integer("paths_bs_irs", single ? 4 : 1));
            st.rician_factor_db = r.real("rician_factor_db", 13.2);
            st.los_pathloss = PathLossParams{r.real("los_intercept_db", kLosPathLoss.intercept_db),
                                             r.real("los_exponent", kLosPathLoss.exponent),
                                             r.real("los_shadow_sigma_db", kLosPathLoss.shadow_sigma_db)};
            st.nlos_pathloss = PathLossParams{r.real("nlos_intercept_db", kNlosPathLoss.intercept_db),
                                              r.real("nlos_exponent", kNlosPathLoss.exponent),
                                              r.real("nlos_shadow_sigma_db", kNlosPathLoss.shadow_sigma_db)};

            if (single)
            {
                if (r.has("num_irs") && r.integer("num_irs", 1) != 1)
                    r.fail("num_irs", "single-IRS scenarios require num_irs = 1");
                if (r.has("irs_span_m"))
                    r.fail("irs_span_m", "not used by single-IRS scenarios");
                c.single.bs_irs_horizontal_m = r.real("bs_irs_horizontal_m", 119.0);
                c.single.vertical_offset_m = r.real("vertical_offset_m", 0.6);
                c.single.bs_user_horizontal_m = r.real("bs_user_horizontal_m", 119.0);
            }
            else
            {
                c.multi.num_irs = static_cast<int>(r.integer("num_irs", 3));
                c.multi.bs_first_irs_horizontal_m = r.real("bs_irs_horizontal_m", 100.0);
                c.multi.irs_span_m = r.real("irs_span_m", 30.0);
                c.multi.vertical_offset_m = r.real("vertical_offset_m", 0.6);
                c.multi.bs_user_horizontal_m = r.real("bs_user_horizontal_m", 115.0);
            }

            c.transmit_power_dbm = r.real("transmit_power_dbm", 30.0);
            c.noise_power_dbm = r.real("noise_power_dbm", -90.0);

            if (r.has("solvers"))
            {
                for (const std::string &tok : split(r.text("solvers", ""), ','))
                {
                    try
                    {
                        c.solvers.push_back(parse_solver(tok));
                    }
                    catch (const InvalidArgument &e)
                    {
                        r.fail("solvers", e.what());
                    }
                }
            }
            else
            {
                c.solvers = default_solvers(c.scenario);
            }
            if (r.has("phase_bits"))
            {
                const long long b = r.integer("phase_bits", 0);
                if (b < 1 || b > 16)
                    r.fail("phase_bits", "must be in [1, 16]");
                std::vector<SolverSpec> extra;
                for (const SolverSpec &s : c.solvers)
                {
                    const bool has_phases = s.kind == SolverSpec::Kind::ClosedForm ||
                                            s.kind == SolverSpec::Kind::Analytical || s.kind == SolverSpec::Kind::Sdr;
                    if (has_phases && !s.bits)
                        extra.push_back(SolverSpec{s.kind, static_cast<int>(b)});
                }
                c.solvers.insert(c.solvers.end(), extra.begin(), extra.end());
            }

            if (r.has("sweep_values"))
            {
                try
                {
                    c.sweep_values = parse_value_list(r.text("sweep_values", ""));
                }
                catch (const InvalidArgument &e)
                {
                    r.fail("sweep_values", e.what());
                }
            }
            else
            {
                throw ConfigError("config: key 'sweep_values' is required");
            }

            const long long trials = r.integer("trials", 1000);
            if (trials < 1 || trials > 100000000)
                r.fail("trials", "must be in [1, 1e8]");
            c.trials = static_cast<int>(trials);
            c.seed = r.unsigned64("seed", 1);
            c.outage_threshold = r.real("outage_threshold", 0.5);
            c.sdr_randomizations = static_cast<int>(r.integer("sdr_randomizations", 1000));
            c.workers = static_cast<int>(r.integer("workers", 0));
            c.statistical.bs_user_sigma = r.optional_real("stat_bs_user_sigma");
            c.statistical.irs_user_sigma = r.optional_real("stat_irs_user_sigma");
            c.statistical.bs_irs_gain = r.optional_real("stat_bs_irs_gain");
            if (r.has("verify_bits"))
            {
                c.verify_bits.clear();
                std::vector<double> vals;
                try
                {
                    vals = parse_value_list(r.text("verify_bits", ""));
                }
                catch (const InvalidArgument &e)
                {
                    r.fail("verify_bits", e.what());
                }
                for (double v : vals)
                {
                    if (v != std::round(v) || v < 1 || v > 16)
                        r.fail("verify_bits", "entries must be integers in [1, 16]");
                    c.verify_bits.push_back(static_cast<int>(v));
                }
            }
            return c;
        }
    } // namespace

    std::string SolverSpec::label() const
    {
        std::string base;
        switch (kind)
        {
        case Kind::Mrt:
            base = "mrt";
            break;
        case Kind::ClosedForm:
            base = "closed_form";
            break;
        case Kind::Analytical:
            base = "analytical";
            break;
        case Kind::Sdr:
            base = "sdr";
            break;
        case Kind::UpperBound:
            base = "upper_bound";
            break;
        }
        return bits ? base + ":" + std::to_string(*bits) : base;
    }

    SolverSpec parse_solver(const std::string &token)
    {
        const std::string t = trim(token);
        const auto colon = t.find(':');
        const std::string name = t.substr(0, colon);
        SolverSpec s;
        if (name == "mrt")
            s.kind = SolverSpec::Kind::Mrt;
        else if (name == "closed_form")
            s.kind = SolverSpec::Kind::ClosedForm;
        else if (name == "analytical")
            s.kind = SolverSpec::Kind::Analytical;
        else if (name == "sdr")
            s.kind = SolverSpec::Kind::Sdr;
        else if (name == "upper_bound")
            s.kind = SolverSpec::Kind::UpperBound;
        else
            throw InvalidArgument("unknown solver '" + name + "'");
        if (colon != std::string::npos)
        {
            long long b = 0;
            if (!parse_int(t.substr(colon + 1), b) || b < 1 || b > 16)
                throw InvalidArgument("solver '" + t + "': bits must be an integer in [1, 16]");
            if (s.kind == SolverSpec::Kind::Mrt || s.kind == SolverSpec::Kind::UpperBound)
                throw InvalidArgument("solver '" + name + "' has no IRS phases to quantize");
            s.bits = static_cast<int>(b);
        }
        return s;
    }

    std::string to_string(Scenario s)
    {
        switch (s)
        {
        case Scenario::SingleIrsSweepDistance:
            return "single_irs_sweep_distance";
        case Scenario::SingleIrsSweepM:
            return "single_irs_sweep_m";
        case Scenario::MultiIrsSweepDistance:
            return "multi_irs_sweep_distance";
        case Scenario::MultiIrsSweepM:
            return "multi_irs_sweep_m";
        case Scenario::BlockageSweep:
            return "blockage_sweep";
        }
        return "unknown";
    }

    std::vector<double> parse_value_list(const std::string &text)
    {
        const std::string t = trim(text);
        require(!t.empty(), "empty value list");
        std::vector<double> out;
        if (t.find(':') != std::string::npos)
        {
            const auto parts = split(t, ':');
            double a = 0, step = 0, b = 0;
            require(parts.size() == 3 && parse_double(parts[0], a) && parse_double(parts[1], step) &&
                        parse_double(parts[2], b),
                    "range must be start:step:stop");
            require(step != 0.0 && (b - a) / step >= 0.0, "range step has the wrong sign or is zero");
            const double count = std::floor((b - a) / step + 1e-9);
            require(count < 1e6, "range has too many points");
            for (long i = 0; i <= static_cast<long>(count); ++i)
                out.push_back(a + static_cast<double>(i) * step);
            return out;
        }
        for (const std::string &tok : split(t, ','))
        {
            double v = 0.0;
            require(parse_double(tok, v), "not a number: '" + tok + "'");
            out.push_back(v);
        }
        return out;
    }

    void ExperimentConfig::validate() const
    {
        auto fail = [](const std::string &field, const std::string &what) {
            throw ConfigError("config: field '" + field + "': " + what);
        };
        if (bs_array.num_elements < 1)
            fail("num_antennas", "must be >= 1");
        if (!(bs_array.spacing_over_wavelength > 0.0))
            fail("element_spacing", "must be > 0");
        if (irs_array.cols < 1)
            fail("irs_cols", "must be >= 1");
        if (!sweeps_m() && irs_array.rows < 1)
            fail("irs_rows", "must be >= 1");
        try
        {
            channel_stats.validate();
        }
        catch (const InvalidArgument &e)
        {
            fail("channel statistics", e.what());
        }
        if (is_single())
        {
            if (!(single.bs_irs_horizontal_m > 0.0))
                fail("bs_irs_horizontal_m", "must be > 0");
            if (!(single.vertical_offset_m >= 0.0))
                fail("vertical_offset_m", "must be >= 0");
            if (!(single.bs_user_horizontal_m > 0.0))
                fail("bs_user_horizontal_m", "must be > 0");
        }
        else
        {
            if (multi.num_irs < 1 || multi.num_irs > 64)
                fail("num_irs", "must be in [1, 64]");
            if (!(multi.bs_first_irs_horizontal_m > 0.0))
                fail("bs_irs_horizontal_m", "must be > 0");
            if (multi.num_irs > 1 && !(multi.irs_span_m > 0.0))
                fail("irs_span_m", "must be > 0 when num_irs > 1");
            if (!(multi.vertical_offset_m >= 0.0))
                fail("vertical_offset_m", "must be >= 0");
            if (!(multi.bs_user_horizontal_m > 0.0))
                fail("bs_user_horizontal_m", "must be > 0");
        }
        if (!(noise_power_dbm > -400.0 && noise_power_dbm < 400.0))
            fail("noise_power_dbm", "out of range");
        if (!(transmit_power_dbm > -400.0 && transmit_power_dbm < 400.0))
            fail("transmit_power_dbm", "out of range");
        if (solvers.empty())
            fail("solvers", "at least one solver required");
        for (const SolverSpec &s : solvers)
        {
            if (s.kind == SolverSpec::Kind::ClosedForm && num_irs() != 1)
                fail("solvers", "closed_form requires exactly one IRS");
            if (s.kind == SolverSpec::Kind::UpperBound && scenario == Scenario::BlockageSweep)
                fail("solvers", "upper_bound is not defined for blockage_sweep");
        }
        std::set<std::string> labels;
        for (const SolverSpec &s : solvers)
            if (!labels.insert(s.label()).second)
                fail("solvers", "duplicate solver '" + s.label() + "'");
        if (sweep_values.empty())
            fail("sweep_values", "must be nonempty");
        if (sweep_values.size() > 1)
        {
            const bool up = sweep_values[1] > sweep_values[0];
            for (std::size_t i = 1; i < sweep_values.size(); ++i)
                if (up ? !(sweep_values[i] > sweep_values[i - 1]) : !(sweep_values[i] < sweep_values[i - 1]))
                    fail("sweep_values", "must be strictly monotone");
        }
        for (double v : sweep_values)
        {
            if (scenario == Scenario::BlockageSweep)
            {
                if (!(v >= 0.0 && v <= 1.0))
                    fail("sweep_values", "blockage probabilities must lie in [0, 1]");
            }
            else if (sweeps_m())
            {
                if (v < 1.0 || v != std::round(v) || static_cast<long long>(v) % irs_array.cols != 0)
                    fail("sweep_values", "M values must be positive integers divisible by irs_cols");
            }
            else if (!(v > 0.0))
            {
                fail("sweep_values", "distances must be > 0");
            }
        }
        if (trials < 1)
            fail("trials", "must be >= 1");
        if (sdr_randomizations < 1)
            fail("sdr_randomizations", "must be >= 1");
        if (workers < 0)
            fail("workers", "must be >= 0");
        auto positive = [&](const std::optional<double> &v, const char *name) {
            if (v && !(*v > 0.0))
                fail(name, "must be > 0");
        };
        if (statistical.bs_user_sigma && !(*statistical.bs_user_sigma >= 0.0))
            fail("stat_bs_user_sigma", "must be >= 0");
        positive(statistical.irs_user_sigma, "stat_irs_user_sigma");
        positive(statistical.bs_irs_gain, "stat_bs_irs_gain");
        if (verify_bits.empty())
            fail("verify_bits", "must be nonempty");
    }

    ExperimentConfig parse_config(std::istream &in, const std::string &source_name,
                                  const std::vector<std::string> &overrides)
    {
        std::map<std::string, Entry> entries;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const std::string where = source_name + ":" + std::to_string(lineno);
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!known_keys().count(key))
                throw ConfigError(where + ": unknown key '" + key + "'");
            if (entries.count(key))
                throw ConfigError(where + ": duplicate key '" + key + "' (first set at " + entries[key].where + ")");
            entries[key] = Entry{value, where};
        }
        for (const std::string &ov : overrides)
        {
            const auto eq = ov.find('=');
            if (eq == std::string::npos)
                throw ConfigError("override '" + ov + "': expected key=value");
            const std::string key = trim(ov.substr(0, eq));
            if (!known_keys().count(key))
                throw ConfigError("override: unknown key '" + key + "'");
            entries[key] = Entry{trim(ov.substr(eq + 1)), "override"};
        }
        ExperimentConfig cfg = build(Reader(entries));
        try
        {
            cfg.validate();
        }
        catch (const ConfigError &e)
        {
            // Point at the line that set the field, when a single key did.
            const std::string msg = e.what();
            const std::string prefix = "config: field '";
            const auto end = msg.find("': ", prefix.size());
            if (msg.rfind(prefix, 0) == 0 && end != std::string::npos)
            {
                const std::string field = msg.substr(prefix.size(), end - prefix.size());
                const auto it = entries.find(field);
                if (it != entries.end())
                    throw ConfigError(it->second.where + ": key '" + field + "': " + msg.substr(end + 3));
            }
            throw;
        }
        return cfg;
    }

    ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path + "'");
        return parse_config(in, path, overrides);
    }
} // namespace irsbeam
