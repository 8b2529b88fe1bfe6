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
#include "tangle/bisim.hpp"
#include "tangle/checker.hpp"
#include "tangle/finality.hpp"
#include "tangle/generate.hpp"
#include "tangle/parser.hpp"

using namespace tangle;

namespace {

Mu P(const char* s) { return parse_mu(s); }

// two irreflexive points seeing each other; e at 0, o and p at 1, i at both
KripkeModel example_model()
{
    KripkeModel m(2);
    m.add_edge(0, 1);
    m.add_edge(1, 0);
    m.set_prop("e", 0);
    m.set_prop("o", 1);
    m.set_prop("p", 1);
    m.set_prop("i", 0);
    m.set_prop("i", 1);
    return m;
}

WorldSet set_of(std::size_t n, std::initializer_list<std::size_t> ws)
{
    WorldSet s(n);
    for (auto w : ws) s.set(w);
    return s;
}

} // namespace

TEST_CASE("evaluation on the two-point cluster")
{
    KripkeModel e = example_model();
    CHECK(eval(e, P("o | <>p")) == set_of(2, {0, 1}));
    CHECK(eval(e, P("<><>e")) == set_of(2, {0}));
    CHECK(eval(e, P("mu x.x")).empty());
    CHECK(eval(e, P("nu x.x")).full());
    CHECK(eval(e, P("nu x.(i & <>x)")).full());
    CHECK_THROWS_AS(eval(e, Mu::var("y")), FormulaError);
    Env env{{"y", set_of(2, {1})}};
    CHECK(eval(e, Mu::diamond(Mu::var("y")), env) == set_of(2, {0}));
}

TEST_CASE("direct tangle examples")
{
    KripkeModel e = example_model();
    CHECK(eval_tangle_direct(e, std::vector<Mu>{P("e"), P("o")}) == set_of(2, {0, 1}));
    CHECK(eval_tangle_direct(e, std::vector<Mu>{P("o"), P("p")}).empty());
    CHECK(eval(e, expand_tangle({P("e"), P("o")})) == set_of(2, {0, 1}));
    CHECK(eval(e, expand_tangle({P("o"), P("p")})).empty());
    KripkeModel r(1);
    r.add_edge(0, 0);
    r.set_prop("p", 0);
    CHECK(eval_tangle_direct(r, std::vector<Mu>{P("p")}) == set_of(1, {0}));
    CHECK_THROWS_AS(eval_tangle_direct(r, std::vector<Mu>{}), FormulaError);
}

TEST_CASE("direct tangle agrees with the fixed point on small models")
{
    const std::vector<Mu> lits{P("p"), P("~p"), P("q"), P("~q"), P("T")};
    std::vector<std::vector<Mu>> gammas;
    for (Mu a : lits) {
        gammas.push_back({a});
        for (Mu b : lits) gammas.push_back({a, b});
    }
    for_each_model({"p", "q"}, 3, [&](const KripkeModel& m) {
        ModelChecker mc(m);
        for (const auto& g : gammas) {
            WorldSet direct = eval_tangle_direct(m, g);
            REQUIRE(mc.eval(expand_tangle(g)) == direct);
            std::vector<Tangle> tg;
            for (Mu x : g) tg.push_back(*from_mu(x));
            CHECK(mc.eval(Tangle::tangle(tg)) == direct);
        }
    });
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        KripkeModel m = random_model({"p", "q"}, 9, seed);
        for (const auto& g : gammas) CHECK(eval(m, expand_tangle(g)) == eval_tangle_direct(m, g));
    }
}

TEST_CASE("iterated fixed points equal the exact-fixed-point semantics")
{
    std::mt19937_64 rng(19);
    std::vector<Mu> formulas;
    for (int i = 0; i < 60; ++i) formulas.push_back(testing::random_mu(rng, {"p"}, 5));
    for_each_model({"p"}, 3, [&](const KripkeModel& m) {
        ModelChecker mc(m);
        for (Mu f : formulas) CHECK(mc.eval(f) == eval_by_fixpoint_enumeration(m, f));
    });
}

TEST_CASE("weak transitivity axiom holds on generated models")
{
    Mu ax = P("~<><>p | <.>p");
    for_each_model({"p"}, 4, [&](const KripkeModel& m) { CHECK(eval(m, ax).full()); });
    for (std::uint64_t s = 0; s < 100; ++s) CHECK(eval(random_model({"p"}, 10, s), ax).full());
}

TEST_CASE("bisimulation")
{
    KripkeModel e = example_model();
    CHECK(bisimilar(e, e, {"e", "o", "p", "i"}));

    KripkeModel two(2), refl(1);
    two.add_edge(0, 1);
    two.add_edge(1, 0);
    two.set_prop("p", 0);
    two.set_prop("p", 1);
    refl.add_edge(0, 0);
    refl.set_prop("p", 0);
    CHECK(bisimilar(two, refl, {"p"}));

    KripkeModel irr(1);
    irr.set_prop("p", 0);
    CHECK_FALSE(bisimilar(irr, refl, {"p"}));
    CHECK_FALSE(bisimilar_worlds(irr, 0, refl, 0, {"p"}));

    // restricted to a single point, the two-cycle is an irreflexive point
    CHECK(restricted_bisimilar(two, set_of(2, {0}), irr, irr.all(), {"p"}));

    KripkeModel q = bisim_quotient(two, {"p"});
    CHECK(q.size() == 1);
    CHECK(q.reflexive(0));
}

TEST_CASE("bisimilar worlds agree on formulas")
{
    std::mt19937_64 rng(23);
    std::vector<Mu> formulas;
    for (int i = 0; i < 40; ++i) formulas.push_back(testing::random_mu(rng, {"p"}, 5));
    for (std::uint64_t s = 0; s < 60; ++s) {
        KripkeModel m = random_model({"p"}, 6, s);
        std::vector<std::size_t> block;
        KripkeModel q = bisim_quotient(m, {"p"}, &block);
        CHECK(q.is_wk4());
        CHECK(bisimilar(m, q, {"p"}));
        ModelChecker a(m), b(q);
        for (Mu f : formulas) {
            WorldSet fa = a.eval(f), fb = b.eval(f);
            for (std::size_t w = 0; w < m.size(); ++w) CHECK(fa.test(w) == fb.test(block[w]));
        }
    }
}

TEST_CASE("cluster embedding")
{
    auto all = CanonicalCluster::enumerate({"p"});
    for (const auto& c : all) CHECK(cluster_embeds(c, c) == Embedding::Equivalent);
    CanonicalCluster one({"p"}, {Multiplicity::Absent, Multiplicity::One});
    CanonicalCluster sat({"p"}, {Multiplicity::Absent, Multiplicity::Saturated});
    CHECK(cluster_embeds(one, sat) == Embedding::Strict);
    CHECK(cluster_embeds(sat, one) == Embedding::None);

    // canonical order against a search over subclusters of the realization
    for (const auto& c : all) {
        KripkeModel rc = c.realize();
        for (const auto& d : all) {
            KripkeModel rd = d.realize();
            bool found = false;
            for (std::uint32_t code = 1; code < (1u << rd.size()) && !found; ++code) {
                WorldSet sub(rd.size());
                for (std::size_t w = 0; w < rd.size(); ++w) sub.assign(w, code >> w & 1u);
                found = restricted_bisimilar(rc, rc.all(), rd, sub, {"p"}).has_value();
            }
            CHECK(found == c.embeds_le(d));
            CHECK((c == d) == bisimilar(rc, rd, {"p"}).has_value());
        }
    }
}

TEST_CASE("finality and depth")
{
    KripkeModel e = example_model();
    SigmaClosure se(P("e & o"));
    SigmaView ve(e, se);
    CHECK(ve.final_part() == set_of(2, {0, 1}));
    auto ie = se.index_of(P("e"));
    REQUIRE(ie);
    CHECK(ve.depth_modality(0, *ie) == set_of(2, {0, 1}));
    CHECK(ve.depth_modality(3, std::nullopt).empty());

    KripkeModel c(2);
    c.add_edge(0, 1);
    c.set_prop("p", 0);
    c.set_prop("p", 1);
    SigmaClosure sp(P("p"));
    SigmaView vc(c, sp);
    CHECK(vc.is_final(1));
    CHECK_FALSE(vc.is_final(0));
    CHECK(vc.depth(0) == 1);
    CHECK(vc.is_semifinal(0));

    KripkeModel none(1);
    SigmaClosure sf(P("F"));
    // F and T are the only members up to the S4 prefixes; T holds and is final
    CHECK(SigmaView(none, sf).final_part().full());
}

TEST_CASE("finality invariants on enumerated models")
{
    std::vector<SigmaClosure> sigmas;
    for (const char* f : {"p", "<>p", "nu x.(p & <>x)", "mu x.(q | <>x)", "<inf>{p, ~p}"})
        sigmas.emplace_back(P(f));
    for_each_model({"p", "q"}, 3, [&](const KripkeModel& m) {
        for (const auto& s : sigmas) {
            SigmaView v(m, s);
            const auto& cs = v.clusters();
            ClusterStructure plain(m);
            for (std::size_t w = 0; w < m.size(); ++w) {
                // finality is uniform on clusters; depth never exceeds plain depth
                cs.members(cs.cluster_of(w)).for_each([&](std::size_t u) {
                    CHECK(v.is_final(u) == v.is_final(w));
                    CHECK(v.depth(u) == v.depth(w));
                });
                CHECK(v.depth(w) <= plain.world_depth(w));
                if (!v.is_final(w)) CHECK(v.depth(w) >= 1);
            }
            for (std::size_t n = 0; n < 3; ++n)
                for (std::size_t i = 0; i < s.size(); ++i) {
                    WorldSet d = v.depth_modality(n, i);
                    for (std::size_t c = 0; c < cs.count(); ++c)
                        CHECK((cs.members(c).subset_of(d) || !cs.members(c).intersects(d)));
                }
            CHECK_FALSE(prune_check(m, s, m.all()));
            WorldSet keep = v.final_part();
            if (keep.empty()) continue;
            CHECK_FALSE(prune_check(m, s, keep));
        }
    });
}

TEST_CASE("pruning to any set between the final part and the model")
{
    SigmaClosure s(P("nu x.(p & <>(q & x)) | <>~p"));
    std::mt19937_64 rng(31);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        KripkeModel m = random_model({"p", "q"}, 7, seed);
        SigmaView v(m, s);
        WorldSet keep = v.final_part();
        for (std::size_t w = 0; w < m.size(); ++w)
            if (rng() & 1u) keep.set(w);
        if (keep.empty()) continue;
        auto bad = prune_check(m, s, keep);
        CHECK_MESSAGE(!bad, *bad);
    }
}
