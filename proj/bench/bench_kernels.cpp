// Copyright 2026 The proxlp Authors
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

#include <benchmark/benchmark.h>

#include "proxlp/generators.hpp"
#include "proxlp/kernels.hpp"
#include "proxlp/verify.hpp"

namespace {

using namespace proxlp;

void normal_args(benchmark::internal::Benchmark* b) {
  for (int m : {32, 128, 256}) b->Args({m, 3 * m});
}

void BM_NormalSerial(benchmark::State& state) {
  const int m = state.range(0), n = state.range(1);
  const Matrix a = Matrix::Random(m, n);
  const Vector d = Vector::Random(n).cwiseAbs();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::normal_matrix_serial(a, d));
}
BENCHMARK(BM_NormalSerial)->Apply(normal_args);

void BM_NormalParallel(benchmark::State& state) {
  const int m = state.range(0), n = state.range(1);
  const Matrix a = Matrix::Random(m, n);
  const Vector d = Vector::Random(n).cwiseAbs();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::normal_matrix_parallel(a, d));
}
BENCHMARK(BM_NormalParallel)->Apply(normal_args);

QMatrix kappa_matrix(int n) {
  Rng rng(7);
  return to_rational(random_int_matrix(n / 2, n, 3, rng));
}

void BM_KappaSerial(benchmark::State& state) {
  const int n = state.range(0);
  const QMatrix a = kappa_matrix(n);
  for (auto _ : state) benchmark::DoNotOptimize(brute_kappa_serial(a, n));
}
BENCHMARK(BM_KappaSerial)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_KappaParallel(benchmark::State& state) {
  const int n = state.range(0);
  const QMatrix a = kappa_matrix(n);
  for (auto _ : state) benchmark::DoNotOptimize(brute_kappa(a, n));
}
BENCHMARK(BM_KappaParallel)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
