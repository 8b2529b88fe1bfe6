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

#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tangle/batch.hpp"
#include "tangle/checker.hpp"
#include "tangle/generate.hpp"
#include "tangle/parser.hpp"

using namespace tangle;

namespace {

Tangle random_tangle(std::mt19937_64& rng, int depth)
{
    auto pick = [&](unsigned n) { return static_cast<unsigned>(rng() % n); };
    if (depth == 0 || pick(4) == 0) {
        switch (pick(4)) {
        case 0: return Tangle::top();
        case 1: return Tangle::prop("q");
        default: return Tangle::prop("p");
        }
    }
    switch (pick(7)) {
    case 0: return Tangle::neg(random_tangle(rng, depth - 1));
    case 1: return Tangle::conj(random_tangle(rng, depth - 1), random_tangle(rng, depth - 1));
    case 2: return Tangle::disj(random_tangle(rng, depth - 1), random_tangle(rng, depth - 1));
    case 3: return Tangle::diamond(random_tangle(rng, depth - 1));
    case 4: return Tangle::box(random_tangle(rng, depth - 1));
    default: {
        std::vector<Tangle> ms;
        for (unsigned i = 0, k = 1 + pick(3); i < k; ++i) ms.push_back(random_tangle(rng, depth - 1));
        return Tangle::tangle(ms);
    }
    }
}

} // namespace

TEST_CASE("compiled tangle evaluation matches the checker")
{
    std::mt19937_64 rng(11);
    std::vector<Tangle> roots;
    for (int i = 0; i < 60; ++i) roots.push_back(random_tangle(rng, 5));
    std::vector<KripkeModel> models = enumerate_models({"p", "q"}, 2);
    for (std::uint64_t s = 0; s < 60; ++s) models.push_back(random_model({"p", "q"}, 3 + s % 60, s));
    models.push_back(random_model({"p", "q"}, 90, 99)); // beyond the mask width
    const auto par = batch_eval(roots, models);
    const auto ser = batch_eval_serial(roots, models);
    REQUIRE(par.size() == ser.size());
    for (std::size_t k = 0; k < models.size(); ++k)
        for (std::size_t r = 0; r < roots.size(); ++r) CHECK(par[k][r] == ser[k][r]);
}

TEST_CASE("compiled evaluation rejects wide models")
{
    CompiledTangle c(Tangle::prop("p"));
    CHECK_THROWS_AS(c.eval(random_model({"p"}, 65, 1)), ModelError);
    CHECK(c.node_count() == 1);
    CHECK(c.root_count() == 1);
}

TEST_CASE("batch mu evaluation matches the serial loop")
{
    std::mt19937_64 rng(5);
    std::vector<KripkeModel> models;
    for (std::uint64_t s = 0; s < 80; ++s) models.push_back(random_model({"p", "q"}, 2 + s % 12, s));
    for (int i = 0; i < 20; ++i) {
        Mu f = tangle::testing::random_mu(rng, {"p", "q"}, 4);
        CHECK(batch_eval(f, models) == batch_eval_serial(f, models));
    }
    CHECK(batch_threads() >= 1);
}

TEST_CASE("mask conversions round trip")
{
    WorldSet s(10);
    s.set(0);
    s.set(9);
    CHECK(to_mask(s) == 0b1000000001u);
    CHECK(from_mask(to_mask(s), 10) == s);
}
