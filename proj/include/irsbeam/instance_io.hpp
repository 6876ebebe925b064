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

#include <istream>
#include <ostream>
#include <string>

namespace irsbeam
{
    /// Text format for one channel realization. Each block is a header line
    ///
    ///     <name> [k] <rows> <cols>
    ///
    /// followed by <rows> lines of <cols> whitespace-separated "re,im" tokens (row-major). Names:
    /// bs_user (N x 1), bs_irs k (M x N), irs_user k (M x 1) and, optionally for every IRS,
    /// link_gain k (1 x 1), link_irs k (M x 1), link_bs k (N x 1). IRS indices start at 0 and must be
    /// contiguous. '#' starts a comment. Without link blocks the rank-one links are left empty.
    ChannelSet read_instance(std::istream &in, const std::string &source_name);
    ChannelSet load_instance(const std::string &path);

    void write_instance(std::ostream &out, const ChannelSet &ch);
} // namespace irsbeam
