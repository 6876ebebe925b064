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


#include "irsbeam/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace irsbeam
{
    namespace
    {
        struct Block
        {
            CMatrix data;
            int line = 0;
        };

        bool parse_real(const std::string &s, double &out)
        {
            const char *first = s.data();
            const char *last = s.data() + s.size();
            if (first != last && *first == '+')
                ++first;
            const auto res = std::from_chars(first, last, out);
            return !s.empty() && res.ec == std::errc() && res.ptr == last && std::isfinite(out);
        }

        cplx parse_complex(const std::string &tok, const std::string &where)
        {
            const auto comma = tok.find(',');
            double re = 0.0, im = 0.0;
            if (comma == std::string::npos || !parse_real(tok.substr(0, comma), re) ||
                !parse_real(tok.substr(comma + 1), im))
                throw ConfigError(where + ": expected 're,im', got '" + tok + "'");
            return {re, im};
        }

        bool indexed(const std::string &name)
        {
            return name != "bs_user";
        }

        CVector column(const Block &b, Eigen::Index expected, const std::string &what)
        {
            if (b.data.cols() != 1 || (expected >= 0 && b.data.rows() != expected))
                throw ConfigError("instance line " + std::to_string(b.line) + ": " + what + " has wrong dimensions");
            return b.data.col(0);
        }
    } // namespace

    ChannelSet read_instance(std::istream &in, const std::string &source_name)
    {
        std::map<std::pair<std::string, int>, Block> blocks;
        std::string line;
        int lineno = 0;
        auto next_content_line = [&](std::string &out) {
            while (std::getline(in, out))
            {
                ++lineno;
                const auto hash = out.find('#');
                if (hash != std::string::npos)
                    out.erase(hash);
                if (out.find_first_not_of(" \t\r") != std::string::npos)
                    return true;
            }
            return false;
        };

        while (next_content_line(line))
        {
            const std::string where = source_name + ":" + std::to_string(lineno);
            std::istringstream hs(line);
            std::string name;
            hs >> name;
            static const char *names[] = {"bs_user", "bs_irs", "irs_user", "link_gain", "link_irs", "link_bs"};
            bool known = false;
            for (const char *n : names)
                known = known || name == n;
            if (!known)
                throw ConfigError(where + ": unknown block '" + name + "'");
            int k = -1;
            if (indexed(name) && !(hs >> k))
                throw ConfigError(where + ": block '" + name + "' needs an IRS index");
            long rows = 0, cols = 0;
            std::string extra;
            if (!(hs >> rows >> cols) || rows < 1 || cols < 1 || rows > 1000000 || cols > 1000000 || (hs >> extra))
                throw ConfigError(where + ": expected '" + name + (indexed(name) ? " k" : "") + " rows cols'");
            if (k < -1 || (indexed(name) && k < 0))
                throw ConfigError(where + ": IRS index must be >= 0");
            const auto key = std::make_pair(name, k);
            if (blocks.count(key))
                throw ConfigError(where + ": duplicate block '" + name + "'");
            Block b;
            b.line = lineno;
            b.data.resize(rows, cols);
            for (long r = 0; r < rows; ++r)
            {
                if (!next_content_line(line))
                    throw ConfigError(source_name + ": unexpected end of file inside block '" + name + "'");
                const std::string rwhere = source_name + ":" + std::to_string(lineno);
                std::istringstream rs(line);
                std::string tok;
                long c = 0;
                while (rs >> tok)
                {
                    if (c >= cols)
                        throw ConfigError(rwhere + ": too many entries in row");
                    b.data(r, c++) = parse_complex(tok, rwhere);
                }
                if (c != cols)
                    throw ConfigError(rwhere + ": expected " + std::to_string(cols) + " entries");
            }
            blocks.emplace(key, std::move(b));
        }

        ChannelSet ch;
        const auto bu = blocks.find({"bs_user", -1});
        if (bu == blocks.end())
            throw ConfigError(source_name + ": missing block 'bs_user'");
        ch.bs_user = column(bu->second, -1, "bs_user");
        const Eigen::Index n = ch.bs_user.size();

        int num_irs = 0;
        while (blocks.count({"bs_irs", num_irs}))
            ++num_irs;
        bool any_link = false;
        for (const auto &[key, b] : blocks)
        {
            if (key.first != "bs_user" && key.second >= num_irs)
                throw ConfigError("instance line " + std::to_string(b.line) + ": IRS index " +
                                  std::to_string(key.second) + " has no matching bs_irs block");
            any_link = any_link || key.first.rfind("link_", 0) == 0;
        }
        for (int k = 0; k < num_irs; ++k)
        {
            const Block &g = blocks.at({"bs_irs", k});
            if (g.data.cols() != n)
                throw ConfigError("instance line " + std::to_string(g.line) + ": bs_irs columns must equal N");
            const auto hr = blocks.find({"irs_user", k});
            if (hr == blocks.end())
                throw ConfigError(source_name + ": missing block 'irs_user " + std::to_string(k) + "'");
            ch.bs_irs.push_back(g.data);
            ch.irs_user.push_back(column(hr->second, g.data.rows(), "irs_user"));
            if (any_link)
            {
                const auto lg = blocks.find({"link_gain", k});
                const auto la = blocks.find({"link_irs", k});
                const auto lb = blocks.find({"link_bs", k});
                if (lg == blocks.end() || la == blocks.end() || lb == blocks.end())
                    throw ConfigError(source_name + ": IRS " + std::to_string(k) +
                                      " needs link_gain, link_irs and link_bs (or no IRS may have links)");
                RankOneLink l;
                l.gain = column(lg->second, 1, "link_gain")[0];
                l.irs_steering = column(la->second, g.data.rows(), "link_irs");
                l.bs_steering = column(lb->second, n, "link_bs");
                ch.rank_one.push_back(std::move(l));
            }
        }
        try
        {
            ch.validate();
        }
        catch (const InvalidArgument &e)
        {
            throw ConfigError(source_name + ": " + e.what());
        }
        return ch;
    }

    ChannelSet load_instance(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open instance file '" + path + "'");
        return read_instance(in, path);
    }

    namespace
    {
        void write_block(std::ostream &out, const std::string &header, const CMatrix &m)
        {
            out << header << ' ' << m.rows() << ' ' << m.cols() << '\n';
            char buf[96];
            for (Eigen::Index r = 0; r < m.rows(); ++r)
            {
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                {
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(r, c).real(), m(r, c).imag());
                    out << (c ? " " : "") << buf;
                }
                out << '\n';
            }
        }
    } // namespace

    void write_instance(std::ostream &out, const ChannelSet &ch)
    {
        ch.validate();
        write_block(out, "bs_user", ch.bs_user);
        for (int k = 0; k < ch.num_irs(); ++k)
        {
            const std::string idx = " " + std::to_string(k);
            write_block(out, "bs_irs" + idx, ch.bs_irs[k]);
            write_block(out, "irs_user" + idx, ch.irs_user[k]);
            if (!ch.rank_one.empty())
            {
                CMatrix g(1, 1);
                g(0, 0) = ch.rank_one[k].gain;
                write_block(out, "link_gain" + idx, g);
                write_block(out, "link_irs" + idx, ch.rank_one[k].irs_steering);
                write_block(out, "link_bs" + idx, ch.rank_one[k].bs_steering);
            }
        }
    }
} // namespace irsbeam
