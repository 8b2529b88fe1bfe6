/*
 * Copyright 2026 The tanglemu Authors
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

// Parallel kernels against their serial references.
//
//   bench_parallel --benchmark_filter=Chi
//
// Chi benchmarks evaluate a characteristic formula over every model with at
// most four worlds (argument 0: chi(p), 1: chi(<>p) on a prefix of the
// models). Mu benchmarks evaluate one fixed point formula over random
// models of 8..40 worlds.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "tangle/batch.hpp"
#include "tangle/generate.hpp"
#include "tangle/parser.hpp"
#include "tangle/translator.hpp"

using namespace tangle;

namespace {

struct ChiCase {
    Tangle chi;
    std::vector<KripkeModel> models;
};

const ChiCase& chi_case(int which)
{
    static std::map<int, ChiCase> cases;
    auto it = cases.find(which);
    if (it != cases.end()) return it->second;
    ChiCase c;
    Translator tr(parse_mu(which == 0 ? "p" : "<>p"));
    c.chi = tr.chi();
    c.models = enumerate_models({"p"}, max_enumerated_worlds);
    // the serial checker is slow on the larger formula
    if (which == 1) c.models.resize(100);
    return cases.emplace(which, std::move(c)).first->second;
}

const std::vector<KripkeModel>& random_models()
{
    static const std::vector<KripkeModel> models = [] {
        std::vector<KripkeModel> out;
        for (std::uint64_t k = 0; k < 2000; ++k) out.push_back(random_model({"p", "q"}, 8 + k % 33, k));
        return out;
    }();
    return models;
}

const Mu mu_formula = parse_mu("nu x.mu y.((p & <>x) | (q & <>y) | <inf>{p, ~q})");

void BM_ChiSerial(benchmark::State& state)
{
    const auto& c = chi_case(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch_eval_serial({c.chi}, c.models));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.models.size()));
}

void BM_ChiParallel(benchmark::State& state)
{
    const auto& c = chi_case(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch_eval({c.chi}, c.models));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.models.size()));
    state.counters["threads"] = batch_threads();
}

void BM_MuSerial(benchmark::State& state)
{
    const auto& models = random_models();
    for (auto _ : state) benchmark::DoNotOptimize(batch_eval_serial(mu_formula, models));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(models.size()));
}

void BM_MuParallel(benchmark::State& state)
{
    const auto& models = random_models();
    for (auto _ : state) benchmark::DoNotOptimize(batch_eval(mu_formula, models));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(models.size()));
    state.counters["threads"] = batch_threads();
}

} // namespace

BENCHMARK(BM_ChiSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChiParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MuSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MuParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
