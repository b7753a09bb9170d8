/*
 * Copyright 2026 The noisyboson Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference kernels against their OpenMP counterparts.
//   bench_kernels --benchmark_filter=Ryser

#include <benchmark/benchmark.h>

#include "noisyboson/noisyprob.hpp"
#include "noisyboson/permanent.hpp"
#include "noisyboson/randmat.hpp"
#include "noisyboson/sampler.hpp"

using namespace noisyboson;

namespace {

int thread_arg(const benchmark::State& state) { return static_cast<int>(state.range(1)); }

void BM_RyserSerial(benchmark::State& state) {
    const auto m = sample_gaussian_matrix(static_cast<std::size_t>(state.range(0)),
                                          static_cast<std::size_t>(state.range(0)), Seed{1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_ryser_serial(m));
    }
}

void BM_RyserParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = sample_gaussian_matrix(n, n, Seed{1});
    const Exec exec{thread_arg(state)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_ryser(m, default_permanent_chunks(n), exec));
    }
}

void BM_Glynn(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = sample_gaussian_matrix(n, n, Seed{1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_glynn(m));
    }
}

void BM_SweepSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = sample_gaussian_matrix(n, n, Seed{2});
    for (auto _ : state) {
        benchmark::DoNotOptimize(FixedJTable::compute_serial(m));
    }
}

void BM_SweepParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = sample_gaussian_matrix(n, n, Seed{2});
    const Exec exec{thread_arg(state)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(FixedJTable::compute(m, exec));
    }
}

void BM_SamplerBatch(benchmark::State& state) {
    const auto u = sample_haar_unitary(6, Seed{3});
    const BosonSampler sampler(u, 0.5, 3);
    const Exec exec{thread_arg(state)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.sample_batch(static_cast<std::size_t>(state.range(0)), Seed{4}, exec));
    }
}

} // namespace

BENCHMARK(BM_RyserSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RyserParallel)->ArgsProduct({{14, 17, 20}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Glynn)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->ArgsProduct({{6, 8, 10, 12}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplerBatch)->ArgsProduct({{100000}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
