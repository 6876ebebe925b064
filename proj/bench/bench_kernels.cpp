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


// Serial reference loops against the OpenMP kernels.
#include "irsbeam/harness.hpp"
#include "irsbeam/oracle.hpp"

#include <benchmark/benchmark.h>

#include <sstream>

using namespace irsbeam;

namespace
{
    Execution mode(const benchmark::State &state)
    {
        return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
    }

    void label(benchmark::State &state)
    {
        state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
    }

    void BM_GridSearch(benchmark::State &state)
    {
        RandomStream rng(1);
        const int vars = static_cast<int>(state.range(1));
        const CRowVector base = rng.complex_normal_vector(8, 1.0).transpose();
        std::vector<CRowVector> terms;
        for (int i = 0; i < vars; ++i)
            terms.push_back(rng.complex_normal_vector(8, 1.0).transpose());
        for (auto _ : state)
            benchmark::DoNotOptimize(grid_search(base, terms, 4, mode(state)));
        label(state);
    }
    BENCHMARK(BM_GridSearch)->ArgsProduct({{0, 1}, {4, 5, 6}})->Unit(benchmark::kMillisecond);

    void BM_SweepPoint(benchmark::State &state)
    {
        std::istringstream in("scenario = multi_irs_sweep_distance\nnum_antennas = 64\nsweep_values = 115\n"
                              "trials = 64\nsdr_randomizations = 200\n");
        const ExperimentConfig cfg = parse_config(in, "bench");
        for (auto _ : state)
            benchmark::DoNotOptimize(run_sweep_point(cfg, 0, mode(state)));
        label(state);
    }
    BENCHMARK(BM_SweepPoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
} // namespace

BENCHMARK_MAIN();
