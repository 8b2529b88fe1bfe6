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

#include <set>

#include "doctest.h"
#include "tangle/canonical_cluster.hpp"
#include "tangle/generate.hpp"
#include "tangle/kripke.hpp"
#include "tangle/model_io.hpp"

using namespace tangle;

namespace {

// 0 <-> 1, irreflexive
KripkeModel two_cycle()
{
    KripkeModel m(2);
    m.add_edge(0, 1);
    m.add_edge(1, 0);
    return m;
}

KripkeModel chain(std::size_t n)
{
    KripkeModel m(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) m.add_edge(u, v);
    return m;
}

// independent weak-transitivity check straight from the definition
bool brute_wk4(const KripkeModel& m)
{
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b)
            for (std::size_t c = 0; c < m.size(); ++c)
                if (m.edge(a, b) && m.edge(b, c) && a != c && !m.edge(a, c)) return false;
    return true;
}

} // namespace

TEST_CASE("weak transitivity")
{
    KripkeModel e = two_cycle();
    CHECK(e.is_wk4());
    CHECK_FALSE(e.is_transitive());
    CHECK(KripkeModel().is_wk4());
    KripkeModel bad(3);
    bad.add_edge(0, 1);
    bad.add_edge(1, 2);
    auto v = bad.wk4_violation();
    REQUIRE(v);
    CHECK(*v == std::array<std::size_t, 3>{0, 1, 2});
    bad.close_weakly_transitive();
    CHECK(bad.is_wk4());
    CHECK(bad.edge(0, 2));
    CHECK(bad.edge_count() == 3);
}

TEST_CASE("weak-transitive closure is idempotent and minimal")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        KripkeModel m = random_model({"p"}, 6, seed);
        CHECK(brute_wk4(m));
        KripkeModel again = m;
        again.close_weakly_transitive();
        CHECK(again == m);
    }
    // minimality: every added edge is forced
    KripkeModel raw(5);
    raw.add_edge(0, 1);
    raw.add_edge(1, 2);
    raw.add_edge(2, 0);
    raw.add_edge(3, 4);
    KripkeModel closed = raw;
    closed.close_weakly_transitive();
    for (std::size_t u = 0; u < 5; ++u)
        for (std::size_t v = 0; v < 5; ++v) {
            if (!closed.edge(u, v) || raw.edge(u, v)) continue;
            KripkeModel fewer = closed;
            fewer.remove_edge(u, v);
            CHECK_FALSE(fewer.is_wk4());
        }
    CHECK_FALSE(closed.edge(0, 0));
    CHECK(closed.edge(0, 2));
}

TEST_CASE("clusters and their order")
{
    ClusterStructure ce(two_cycle());
    CHECK(ce.count() == 1);
    CHECK(ce.depth(0) == 0);

    KripkeModel two = chain(2);
    ClusterStructure c2(two);
    REQUIRE(c2.count() == 2);
    CHECK(c2.below(c2.cluster_of(0), c2.cluster_of(1)));
    CHECK_FALSE(c2.below(c2.cluster_of(1), c2.cluster_of(0)));
    CHECK(c2.compare(c2.cluster_of(1), c2.cluster_of(0)) == ClusterOrder::Incomparable);

    KripkeModel refl(1);
    refl.add_edge(0, 0);
    ClusterStructure cr(refl);
    CHECK(cr.below_eq(0, 0));
    CHECK_FALSE(cr.below(0, 0));

    KripkeModel three = chain(3);
    ClusterStructure c3(three);
    CHECK(c3.world_depth(0) == 2);
    CHECK(c3.world_depth(2) == 0);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        KripkeModel m = random_model({}, 7, seed);
        ClusterStructure cs(m);
        for (std::size_t u = 0; u < m.size(); ++u)
            for (std::size_t v = 0; v < m.size(); ++v)
                CHECK((cs.cluster_of(u) == cs.cluster_of(v))
                      == (m.sees_refl(u, v) && m.sees_refl(v, u)));
    }
}

TEST_CASE("stacking")
{
    KripkeModel e = two_cycle();
    KripkeModel c(1);
    KripkeModel s = stack(e, c);
    CHECK(s.size() == 3);
    CHECK(s.edge(2, 0));
    CHECK(s.edge(2, 1));
    CHECK(s.is_wk4());
    CHECK(stack(KripkeModel(), c) == c);
    ClusterStructure cs(s);
    CHECK(cs.world_depth(2) == 1);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        KripkeModel up = random_model({"p"}, 4, seed);
        KripkeModel low = random_model({"p"}, 3, seed + 1000);
        KripkeModel st = stack(up, low);
        CHECK(st.is_wk4() == low.is_wk4());
    }
}

TEST_CASE("canonical clusters")
{
    CHECK(CanonicalCluster::enumerate({}).size() == 2);
    auto one = CanonicalCluster::enumerate({"p"});
    CHECK(one.size() == 8);
    CHECK(CanonicalCluster::enumerate({"p", "q"}).size() == 80);
    for (const auto& c : one) {
        KripkeModel r = c.realize();
        CHECK(r.is_wk4());
        ClusterStructure cs(r);
        CHECK(cs.count() == 1);
        CHECK(CanonicalCluster::of(r, r.all(), {"p"}) == c);
    }
    KripkeModel refl(1);
    refl.add_edge(0, 0);
    auto sat = CanonicalCluster::of(refl, refl.all(), {});
    CHECK(sat.at(0) == Multiplicity::Saturated);
    auto single = CanonicalCluster::of(KripkeModel(1), KripkeModel(1).all(), {});
    CHECK(single.embeds(sat));
    CHECK_FALSE(sat.embeds_le(single));
    CHECK_THROWS_AS(CanonicalCluster::enumerate({"a", "b", "c", "d"}, 1000), ModelError);
}

TEST_CASE("model enumeration")
{
    CHECK(enumerate_models({}, 1).size() == 2);
    // frames on two worlds: 16 relations, all weakly transitive, 10 up to iso
    CHECK(wk4_frames(2).size() == 10);
    auto models = enumerate_models({"p"}, 3);
    for (const auto& m : models) CHECK(m.is_wk4());
    CHECK_THROWS_AS(enumerate_models({}, 5), ModelError);

    // no two emitted models are isomorphic (checked via a brute relabelling)
    auto key = [](const KripkeModel& m) {
        std::vector<std::size_t> p(m.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
        std::string best;
        do {
            std::string s = std::to_string(m.size());
            for (std::size_t u = 0; u < m.size(); ++u) {
                for (std::size_t v = 0; v < m.size(); ++v) s += m.edge(p[u], p[v]) ? '1' : '0';
                s += m.holds("p", p[u]) ? 'p' : '.';
            }
            if (best.empty() || s < best) best = s;
        } while (std::next_permutation(p.begin(), p.end()));
        return best;
    };
    std::set<std::string> keys;
    for (const auto& m : models) keys.insert(key(m));
    CHECK(keys.size() == models.size());
}

TEST_CASE("random models are reproducible")
{
    CHECK(random_model({"p", "q"}, 8, 42) == random_model({"p", "q"}, 8, 42));
    CHECK(random_model({"p", "q"}, 8, 42).is_wk4());
}

TEST_CASE("model json")
{
    auto j = nlohmann::json::parse(R"({"worlds":["a","b"],"edges":[["a","b"],["b","a"]],"val":{"p":["b"]}})");
    KripkeModel m = model_from_json(j);
    CHECK(m.size() == 2);
    CHECK(m.holds("p", 1));
    CHECK(model_from_json(model_to_json(m)) == m);
    CHECK(model_to_json(m).dump() == model_to_json(model_from_json(model_to_json(m))).dump());
    auto bad = nlohmann::json::parse(R"({"worlds":["a","b","c"],"edges":[["a","b"],["b","c"]]})");
    CHECK_THROWS_AS(model_from_json(bad), ModelError);
    bad["close"] = true;
    CHECK(model_from_json(bad).edge(0, 2));
}
