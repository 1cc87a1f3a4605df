// Copyright 2026 The mlmc-qdrift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference vs OpenMP kernels. Run with --benchmark_filter=... and
// MLMC_QDRIFT_THREADS to pick the worker count.

#include <benchmark/benchmark.h>

#include "mlmc_qdrift/mlmc.hpp"

namespace mq = mlmc_qdrift;

namespace {

struct Chain {
    mq::Hamiltonian h = mq::build_heisenberg_xyz(6, 1.0, 0.5, 0.8);
    mq::Observable obs{mq::PauliString::from_text("ZIIIII")};
    mq::StateVector psi0 = mq::StateVector::from_bits("000000");
};

mq::Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? mq::Execution::Serial : mq::Execution::Parallel;
}

void BM_ChannelStep(benchmark::State& state) {
    const Chain c;
    const mq::AveragedChannel channel(c.h, c.h.one_norm() / 128.0);
    const auto rho = mq::DensityMatrix::from_pure(c.psi0);
    mq::DensityMatrix out(6);
    const auto exec = mode(state);
    for (auto _ : state) {
        channel.apply(rho, out, exec);
        benchmark::DoNotOptimize(out.data().data());
    }
    state.SetLabel(exec == mq::Execution::Serial ? "serial" : "openmp");
}
BENCHMARK(BM_ChannelStep)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_TrajectoryBatch(benchmark::State& state) {
    const Chain c;
    const auto exec = mode(state);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto run = mq::run_qdrift(c.h, c.obs, c.psi0, 1.0, 1024, 64, mq::RngStream{++seed, 0},
                                        mq::Measurement::Expectation, exec);
        benchmark::DoNotOptimize(run.summary.mean);
    }
    state.SetItemsProcessed(state.iterations() * 64);
    state.SetLabel(exec == mq::Execution::Serial ? "serial" : "openmp");
}
BENCHMARK(BM_TrajectoryBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CoupledPilot(benchmark::State& state) {
    const Chain c;
    const auto hier = mq::LevelHierarchy::make(c.h, 1.0, 128, 3);
    const auto exec = mode(state);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto v = mq::pilot_variances(c.h, c.obs, c.psi0, hier, 32, mq::RngStream{++seed, 0},
                                           mq::Measurement::Expectation, exec);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetLabel(exec == mq::Execution::Serial ? "serial" : "openmp");
}
BENCHMARK(BM_CoupledPilot)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
