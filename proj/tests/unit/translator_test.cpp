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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tangle/batch.hpp"
#include "tangle/checker.hpp"
#include "tangle/finality.hpp"
#include "tangle/generate.hpp"
#include "tangle/parser.hpp"
#include "tangle/translator.hpp"

using namespace tangle;

namespace {

// The pair a world determines in an arbitrary model: its canonical cluster
// and the depth facts below its own Sigma-depth, read off SigmaView.
std::pair<CanonicalCluster, FactSet> pair_of(const SigmaView& view, std::size_t w,
                                             const std::vector<std::string>& props)
{
    const auto& cs = view.clusters();
    const auto c = CanonicalCluster::of(view.model(), cs.members(cs.cluster_of(w)), props);
    const std::size_t n = view.sigma().size();
    FactSet theta;
    for (std::size_t m = 0; m < view.depth(w); ++m)
        for (std::size_t i = 0; i < n; ++i)
            if (view.depth_modality(m, i).test(w)) theta.push_back(static_cast<std::uint32_t>(m * n + i));
    return {c, theta};
}

const SatPair* find_pair(const Translator& tr, std::size_t depth, const CanonicalCluster& c, const FactSet& theta)
{
    if (depth >= tr.depth_count()) return nullptr;
    for (const auto& p : tr.pairs(depth))
        if (p.cluster == c && p.theta == theta) return &p;
    return nullptr;
}

} // namespace

TEST_CASE("depth 0 pairs are all canonical clusters")
{
    Translator tr(parse_mu("p"));
    REQUIRE(tr.depth_count() >= 1);
    CHECK(tr.pairs(0).size() == 8);
    for (const auto& p : tr.pairs(0)) {
        CHECK(p.final);
        CHECK(p.theta.empty());
        CHECK(!p.theta_up.empty());
    }
    CHECK(tr.chains(0).size() == 8);
    CHECK(tr.semi_chains(0).empty());
}

TEST_CASE("pair finality follows from the facts it sees")
{
    // final iff some member true at the root has no depth fact at all
    for (const char* f : {"p", "<>p", "mu x.(p | <>x)"}) {
        Translator tr(parse_mu(f));
        const std::size_t n = tr.sigma().size();
        for (std::size_t d = 0; d < tr.depth_count(); ++d)
            for (const auto& p : tr.pairs(d)) {
                std::vector<bool> seen(n, false);
                for (auto code : p.theta) seen[code % n] = true;
                bool fresh = false;
                for (const auto& [v, t] : p.root_truth)
                    for (std::size_t i = 0; i < n; ++i)
                        if (t[i] && !seen[i]) fresh = true;
                CHECK(fresh == p.final);
            }
    }
}

TEST_CASE("every world's pair is in the saturated table")
{
    for (const char* f : {"p", "<>p"}) {
        Translator tr(parse_mu(f));
        const auto& props = tr.props();
        std::size_t checked = 0;
        for_each_model(props, 3, [&](const KripkeModel& m) {
            SigmaView view(m, tr.sigma());
            for (std::size_t w = 0; w < m.size(); ++w) {
                auto [c, theta] = pair_of(view, w, props);
                const SatPair* p = find_pair(tr, view.depth(w), c, theta);
                REQUIRE(p != nullptr);
                CHECK(p->final == view.is_final(w));
                const auto& t = p->root_truth.at(valuation_of(m, w, props));
                for (std::size_t i = 0; i < tr.sigma().size(); ++i) CHECK(t[i] == view.holds(i, w));
                ++checked;
            }
        });
        CHECK(checked > 0);
    }
}

TEST_CASE("chains extend by facts and avoid collapsing stacks")
{
    Translator tr(parse_mu("<>p"));
    for (std::size_t d = 1; d < tr.depth_count(); ++d)
        for (const auto* list : {&tr.chains(d), &tr.semi_chains(d)})
            for (const ChainLink& c : *list) {
                const SatPair& prev = tr.pairs(d - 1)[tr.chains(d - 1)[c.prefix].pair];
                const SatPair& cur = tr.pairs(d)[c.pair];
                CHECK(std::includes(cur.theta.begin(), cur.theta.end(), prev.theta_up.begin(), prev.theta_up.end()));
                CHECK(cur.final == (list == &tr.chains(d)));
                if (tr.irreflexive_step(d, c)) CHECK(cur.cluster.embeds_le(prev.cluster));
                CHECK(tr.chain_pairs(d, c).size() == d + 1);
            }
}

TEST_CASE("depth modalities agree with their semantic definition")
{
    struct Case {
        const char* formula;
        std::size_t worlds;
    };
    for (Case k : {Case{"p", 3}, Case{"<>p", 3}}) {
        Translator tr(parse_mu(k.formula));
        const auto& sigma = tr.sigma();
        std::vector<Tangle> roots;
        std::vector<std::pair<std::size_t, std::optional<std::size_t>>> keys;
        for (std::size_t n = 0; n <= tr.depth_count(); ++n)
            for (std::size_t i = 0; i <= sigma.size(); ++i) {
                std::optional<std::size_t> member;
                if (i < sigma.size()) member = i;
                keys.emplace_back(n, member);
                roots.push_back(tr.depth_formula(n, member));
            }
        const CompiledTangle compiled(roots);
        std::size_t bad = 0;
        for_each_model(tr.props(), k.worlds, [&](const KripkeModel& m) {
            SigmaView view(m, sigma);
            const auto masks = compiled.eval(m);
            for (std::size_t j = 0; j < keys.size(); ++j)
                if (to_mask(view.depth_modality(keys[j].first, keys[j].second)) != masks[j]) ++bad;
        });
        CHECK_MESSAGE(bad == 0, k.formula);
    }
}

TEST_CASE("depth modalities on random larger models")
{
    Translator tr(parse_mu("p"));
    const auto& sigma = tr.sigma();
    std::vector<Tangle> roots;
    for (std::size_t n = 0; n <= tr.depth_count(); ++n)
        for (std::size_t i = 0; i < sigma.size(); ++i) roots.push_back(tr.depth_formula(n, i));
    const CompiledTangle compiled(roots);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        KripkeModel m = random_model({"p"}, 5 + seed % 10, seed);
        SigmaView view(m, sigma);
        const auto masks = compiled.eval(m);
        std::size_t j = 0;
        for (std::size_t n = 0; n <= tr.depth_count(); ++n)
            for (std::size_t i = 0; i < sigma.size(); ++i, ++j)
                CHECK(to_mask(view.depth_modality(n, i)) == masks[j]);
    }
}

TEST_CASE("split only holds at non-final worlds of its level")
{
    Translator tr(parse_mu("<>p"));
    std::vector<Tangle> roots;
    for (std::size_t n = 0; n < tr.depth_count(); ++n) roots.push_back(tr.split(n));
    const CompiledTangle compiled(roots);
    for_each_model(tr.props(), 3, [&](const KripkeModel& m) {
        SigmaView view(m, tr.sigma());
        const auto masks = compiled.eval(m);
        for (std::size_t w = 0; w < m.size(); ++w) {
            const std::size_t lv = view.level(w);
            if (lv < masks.size() && (masks[lv] >> w & 1u)) CHECK(!view.is_final(w));
        }
    });
}

TEST_CASE("characteristic formula of small formulas")
{
    for (const char* f : {"F", "T", "p", "~p", "<.>[.]p", "mu x.(p | <>x)", "p & <>~p"}) {
        Translator tr(parse_mu(f));
        Tangle chi = tr.chi();
        const auto models = enumerate_models({"p"}, 3);
        CHECK_MESSAGE(batch_disagreements(tr.formula(), chi, models).empty(), f);
        auto rep = tr.report();
        CHECK(rep.eval_conflicts == 0);
        CHECK(rep.within_bound);
        CHECK(in_tangle_fragment(to_mu(chi)));
        CHECK(alternation_free(to_mu(chi)));
        CHECK(well_formed(chi));
        CHECK(expansion_alternation_free(chi));
    }
}

TEST_CASE("characteristic formula of random formulas")
{
    std::mt19937_64 rng(7);
    const auto models = enumerate_models({"p"}, 3);
    std::size_t translated = 0;
    for (int k = 0; k < 25; ++k) {
        Mu f = tangle::testing::random_mu(rng, {"p"}, 3);
        TranslatorLimits lim;
        lim.max_sigma = 40;
        lim.max_unions = 3000;
        std::optional<Translator> tr;
        try {
            tr.emplace(f, lim);
        } catch (const ResourceError&) {
            continue;
        }
        ++translated;
        CHECK_MESSAGE(batch_disagreements(f, tr->chi(), models).empty(), to_string(f));
    }
    CHECK(translated >= 8);
}

TEST_CASE("size bound arithmetic")
{
    CHECK(size_bound_exponent(0) == 64);
    CHECK(size_bound_exponent(1) == 15 * (boost::multiprecision::cpp_int(1) << 20));
    CHECK(size_bound_check(parse_mu("p"), Translator(parse_mu("p")).chi()));
}

TEST_CASE("translator limits")
{
    TranslatorLimits lim;
    lim.max_props = 1;
    CHECK_THROWS_AS(Translator(parse_mu("p & q"), lim), ResourceError);
    lim = {};
    lim.max_depth = 0;
    CHECK_THROWS_AS(Translator(parse_mu("p"), lim), ResourceError);
    lim = {};
    lim.max_sigma = 5;
    CHECK_THROWS_AS(Translator(parse_mu("<>p"), lim), ResourceError);
}
