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

#include "tangle/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tangle {

namespace {

std::vector<std::size_t> refine(const KripkeModel& u, const std::vector<std::string>& props)
{
    const std::size_t n = u.size();
    std::vector<std::size_t> block(n);
    {
        std::map<std::uint32_t, std::size_t> ids;
        for (std::size_t w = 0; w < n; ++w)
            block[w] = ids.emplace(valuation_of(u, w, props), ids.size()).first->second;
    }
    for (;;) {
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t w = 0; w < n; ++w) {
            std::vector<std::size_t> succ;
            u.succ(w).for_each([&](std::size_t v) { succ.push_back(block[v]); });
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            next[w] = ids.emplace(std::make_pair(block[w], std::move(succ)), ids.size()).first->second;
        }
        const bool stable = std::set<std::size_t>(next.begin(), next.end()).size()
                            == std::set<std::size_t>(block.begin(), block.end()).size();
        block = std::move(next);
        if (stable) return block;
    }
}

} // namespace

std::vector<std::size_t> bisim_blocks(const KripkeModel& m, const KripkeModel& n,
                                      const std::vector<std::string>& props)
{
    KripkeModel u = disjoint_union({&m, &n});
    return refine(u, props);
}

std::optional<WorldPairs> bisimilar(const KripkeModel& m, const KripkeModel& n,
                                    const std::vector<std::string>& props)
{
    auto block = bisim_blocks(m, n, props);
    WorldPairs pairs;
    std::vector<bool> m_hit(m.size(), false), n_hit(n.size(), false);
    for (std::size_t u = 0; u < m.size(); ++u)
        for (std::size_t v = 0; v < n.size(); ++v)
            if (block[u] == block[m.size() + v]) {
                pairs.emplace_back(u, v);
                m_hit[u] = n_hit[v] = true;
            }
    auto all = [](const std::vector<bool>& h) { return std::all_of(h.begin(), h.end(), [](bool b) { return b; }); };
    if (!all(m_hit) || !all(n_hit)) return std::nullopt;
    return pairs;
}

std::optional<WorldPairs> restricted_bisimilar(const KripkeModel& m, const WorldSet& a,
                                               const KripkeModel& n, const WorldSet& b,
                                               const std::vector<std::string>& props)
{
    std::vector<std::size_t> ma, nb;
    KripkeModel rm = restrict(m, a, &ma), rn = restrict(n, b, &nb);
    auto pairs = bisimilar(rm, rn, props);
    if (!pairs) return std::nullopt;
    for (auto& [u, v] : *pairs) {
        u = ma[u];
        v = nb[v];
    }
    return pairs;
}

bool bisimilar_worlds(const KripkeModel& m, std::size_t u, const KripkeModel& n, std::size_t v,
                      const std::vector<std::string>& props)
{
    auto block = bisim_blocks(m, n, props);
    return block[u] == block[m.size() + v];
}

KripkeModel bisim_quotient(const KripkeModel& m, const std::vector<std::string>& props,
                           std::vector<std::size_t>* block_of)
{
    std::vector<std::size_t> block = refine(m, props);
    // renumber blocks by first occurrence
    std::map<std::size_t, std::size_t> order;
    for (std::size_t b : block) order.emplace(b, order.size());
    std::vector<std::size_t> rep(order.size());
    for (std::size_t w = m.size(); w-- > 0;) rep[order[block[w]]] = w;
    KripkeModel q;
    for (std::size_t k = 0; k < rep.size(); ++k) q.add_world(m.label(rep[k]));
    for (std::size_t u = 0; u < m.size(); ++u)
        m.succ(u).for_each([&](std::size_t v) { q.add_edge(order[block[u]], order[block[v]]); });
    for (const auto& p : props) {
        q.declare_prop(p);
        for (std::size_t k = 0; k < rep.size(); ++k)
            if (m.holds(p, rep[k])) q.set_prop(p, k);
    }
    if (block_of) {
        block_of->resize(m.size());
        for (std::size_t w = 0; w < m.size(); ++w) (*block_of)[w] = order[block[w]];
    }
    return q;
}

Embedding cluster_embeds(const CanonicalCluster& c, const CanonicalCluster& d)
{
    if (c == d) return Embedding::Equivalent;
    return c.embeds_le(d) ? Embedding::Strict : Embedding::None;
}

Embedding cluster_embeds(const KripkeModel& m, const WorldSet& c, const KripkeModel& n,
                         const WorldSet& d, const std::vector<std::string>& props)
{
    return cluster_embeds(CanonicalCluster::of(m, c, props), CanonicalCluster::of(n, d, props));
}

} // namespace tangle
