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

#include "tangle/translator.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "tangle/bisim.hpp"
#include "tangle/finality.hpp"

namespace tangle {

namespace {

FactSet merge(const FactSet& a, const FactSet& b)
{
    FactSet r;
    r.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool contains_all(const FactSet& big, const FactSet& small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

SigmaClosure make_closure(Mu phi, std::size_t cap)
{
    try {
        return SigmaClosure(phi, cap);
    } catch (const ClosureError& e) {
        throw ResourceError(e.what());
    }
}

} // namespace

Translator::Translator(Mu phi, TranslatorLimits limits)
    : phi_(phi), limits_(limits), sigma_(make_closure(phi, limits.max_sigma))
{
    props_ = sigma_.atoms();
    if (props_.size() > limits_.max_props)
        throw ResourceError(std::to_string(props_.size()) + " propositions exceed the limit of " +
                            std::to_string(limits_.max_props));
    seed_index_ = *sigma_.index_of(phi);
    build_tables();
}

void Translator::build_tables()
{
    const auto clusters = CanonicalCluster::enumerate(props_);
    KripkeModel empty;
    for (const auto& p : props_) empty.declare_prop(p);

    pairs_.emplace_back();
    pair_index_.emplace_back();
    for (const auto& c : clusters) add_pair(0, c, {}, empty);
    build_chains(0);

    // every union of theta_up sets seen so far, with one generating list each
    std::vector<FactSet> unions{FactSet{}};
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parts{{}};
    std::set<FactSet> known{FactSet{}};

    for (std::size_t d = 0;; ++d) {
        std::vector<std::size_t> gens;
        for (std::size_t i = 0; i < pairs_[d].size(); ++i)
            if (pairs_[d][i].final) gens.push_back(i);
        if (gens.empty()) break;
        if (d + 1 > limits_.max_depth)
            throw ResourceError("closure depth exceeds the limit of " + std::to_string(limits_.max_depth));

        const std::size_t before = unions.size();
        for (std::size_t g : gens) {
            const FactSet& up = pairs_[d][g].theta_up;
            const std::size_t cur = unions.size();
            for (std::size_t u = 0; u < cur; ++u) {
                FactSet v = merge(unions[u], up);
                if (!known.insert(v).second) continue;
                if (unions.size() >= limits_.max_unions)
                    throw ResourceError("more than " + std::to_string(limits_.max_unions) + " fact sets");
                auto ps = parts[u];
                ps.emplace_back(d, g);
                unions.push_back(std::move(v));
                parts.push_back(std::move(ps));
            }
        }

        pairs_.emplace_back();
        pair_index_.emplace_back();
        for (std::size_t u = before; u < unions.size(); ++u) {
            std::vector<const KripkeModel*> models;
            for (auto [pd, pi] : parts[u]) models.push_back(&pairs_[pd][pi].witness);
            KripkeModel upper = bisim_quotient(disjoint_union(models), props_);
            for (const auto& c : clusters) add_pair(d + 1, c, unions[u], upper);
            if (pairs_[d + 1].size() > limits_.max_pairs)
                throw ResourceError("more than " + std::to_string(limits_.max_pairs) + " pairs at depth " +
                                    std::to_string(d + 1));
        }
        build_chains(d + 1);
    }
}

void Translator::add_pair(std::size_t depth, const CanonicalCluster& c, const FactSet& theta,
                          const KripkeModel& upper)
{
    const KripkeModel root = c.realize();
    const KripkeModel w = stack(upper, root);
    const SigmaView view(w, sigma_);
    const std::size_t base = upper.size();
    const std::size_t n = sigma_.size();

    SatPair p{c, theta, {}, depth, view.is_final(base), {}, {}, {}};
    std::vector<bool> somewhere(n, false);
    for (std::size_t k = 0; k < root.size(); ++k) {
        const std::uint32_t v = valuation_of(w, base + k, props_);
        std::vector<bool> t(n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = view.holds(i, base + k);
            if (t[i]) somewhere[i] = true;
        }
        p.root_truth.emplace(v, std::move(t));
    }
    if (p.final) {
        FactSet own;
        for (std::size_t i = 0; i < n; ++i)
            if (somewhere[i]) own.push_back(static_cast<std::uint32_t>(depth * n + i));
        p.theta_up = merge(theta, own);
    }
    std::vector<std::size_t> block;
    p.witness = bisim_quotient(w, props_, &block);
    for (std::size_t k = 0; k < root.size(); ++k) p.root.push_back(block[base + k]);
    std::sort(p.root.begin(), p.root.end());
    p.root.erase(std::unique(p.root.begin(), p.root.end()), p.root.end());

    pair_index_[depth].emplace(std::make_pair(c.classes(), theta), pairs_[depth].size());
    pairs_[depth].push_back(std::move(p));
}

bool Translator::stack_collapses(const CanonicalCluster& upper, const CanonicalCluster& lower)
{
    auto key = std::make_pair(upper.classes(), lower.classes());
    if (auto it = collapse_memo_.find(key); it != collapse_memo_.end()) return it->second;
    const KripkeModel u = upper.realize();
    const bool r = bisimilar(stack(u, lower.realize()), u, props_).has_value();
    collapse_memo_.emplace(std::move(key), r);
    return r;
}

void Translator::build_chains(std::size_t depth)
{
    chains_.emplace_back();
    semi_chains_.emplace_back();
    auto& fin = chains_[depth];
    auto& semi = semi_chains_[depth];
    const auto& here = pairs_[depth];

    if (depth == 0) {
        for (std::size_t i = 0; i < here.size(); ++i)
            (here[i].final ? fin : semi).push_back({ChainLink::none, i});
        return;
    }

    // pairs sharing a theta are contiguous
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < here.size(); ++i) {
        if (runs.empty() || here[runs.back().first].theta != here[i].theta) runs.emplace_back(i, i);
        runs.back().second = i + 1;
    }

    const auto& below = chains_[depth - 1];
    for (std::size_t ci = 0; ci < below.size(); ++ci) {
        const SatPair& prev = pairs_[depth - 1][below[ci].pair];
        for (auto [b, e] : runs) {
            if (!contains_all(here[b].theta, prev.theta_up)) continue;
            const bool same = here[b].theta == prev.theta_up;
            for (std::size_t j = b; j < e; ++j) {
                if (same && stack_collapses(prev.cluster, here[j].cluster)) continue;
                (here[j].final ? fin : semi).push_back({ci, j});
            }
        }
        if (fin.size() + semi.size() > limits_.max_chains)
            throw ResourceError("more than " + std::to_string(limits_.max_chains) + " chains at depth " +
                                std::to_string(depth));
    }
}

std::vector<std::size_t> Translator::chain_pairs(std::size_t d, const ChainLink& c) const
{
    std::vector<std::size_t> out(d + 1);
    ChainLink cur = c;
    for (std::size_t k = d + 1; k-- > 0;) {
        out[k] = cur.pair;
        if (k > 0) cur = chains_[k - 1][cur.prefix];
    }
    return out;
}

bool Translator::irreflexive_step(std::size_t d, const ChainLink& c) const
{
    if (d == 0) return false;
    const SatPair& prev = pairs_[d - 1][chains_[d - 1][c.prefix].pair];
    const SatPair& cur = pairs_[d][c.pair];
    if (!cur.cluster.embeds_le(prev.cluster) || cur.theta != prev.theta_up) return false;
    const auto& cl = cur.cluster.classes();
    return std::find(cl.begin(), cl.end(), Multiplicity::One) != cl.end();
}

bool Translator::chain_below(std::size_t d, const ChainLink& a, const ChainLink& b) const
{
    const SatPair& pa = pairs_[d][a.pair];
    const SatPair& pb = pairs_[d][b.pair];
    return pa.theta == pb.theta && pa.cluster.embeds(pb.cluster);
}

Tangle Translator::tau(std::uint32_t valuation)
{
    if (auto it = tau_memo_.find(valuation); it != tau_memo_.end()) return it->second;
    std::vector<Tangle> lits;
    for (std::size_t i = 0; i < props_.size(); ++i) {
        Tangle p = Tangle::prop(props_[i]);
        lits.push_back(valuation >> i & 1u ? p : Tangle::neg(p));
    }
    Tangle r = Tangle::conj_all(lits);
    tau_memo_.emplace(valuation, r);
    return r;
}

Tangle Translator::facts(const FactSet& theta, std::size_t depth)
{
    auto key = std::make_pair(theta, depth);
    if (auto it = facts_memo_.find(key); it != facts_memo_.end()) return it->second;
    const std::size_t n = sigma_.size();
    std::vector<Tangle> parts;
    for (std::size_t m = 0; m < depth; ++m)
        for (std::size_t i = 0; i < n; ++i) {
            Tangle f = depth_formula(m, i);
            const auto code = static_cast<std::uint32_t>(m * n + i);
            parts.push_back(std::binary_search(theta.begin(), theta.end(), code) ? f : Tangle::neg(f));
        }
    Tangle r = Tangle::conj_all(parts);
    facts_memo_.emplace(std::move(key), r);
    return r;
}

Tangle Translator::alpha(std::size_t d, const ChainLink& c)
{
    auto key = std::make_tuple(d, c.prefix, c.pair);
    if (auto it = alpha_memo_.find(key); it != alpha_memo_.end()) return it->second;
    const SatPair& p = pairs_[d][c.pair];
    const bool ir = irreflexive_step(d, c);
    std::vector<Tangle> members;
    for (std::uint32_t v : p.cluster.support()) {
        Tangle t = tau(v);
        if (d > 0) {
            Tangle up = delta(d - 1, c.prefix);
            t = Tangle::conj(Tangle::conj(t, facts(p.theta, d)),
                             Tangle::diamond(ir ? Tangle::conj(tau(v), up) : up));
        }
        members.push_back(t);
        if (p.cluster.at(v) == Multiplicity::Saturated) members.push_back(t);
    }
    Tangle r = Tangle::tangle(std::move(members));
    alpha_memo_.emplace(key, r);
    return r;
}

Tangle Translator::pair_alphas(std::size_t d, std::size_t pair)
{
    auto& by_pair = alpha_by_pair_[d];
    if (by_pair.empty()) {
        std::map<std::size_t, std::vector<Tangle>> parts;
        for (const ChainLink& c : chains_[d]) parts[c.pair].push_back(alpha(d, c));
        for (auto& [p, as] : parts) by_pair.emplace(p, Tangle::disj_all(as));
    }
    auto it = by_pair.find(pair);
    return it == by_pair.end() ? Tangle::bot() : it->second;
}

Tangle Translator::delta(std::size_t d, std::size_t chain)
{
    if (delta_memo_.size() <= d) {
        delta_memo_.resize(d + 1);
        alpha_by_pair_.resize(d + 1);
        guard_memo_.resize(d + 1);
    }
    auto& memo = delta_memo_[d];
    if (memo.size() < chains_[d].size()) memo.resize(chains_[d].size());
    if (memo[chain].valid()) return memo[chain];

    const ChainLink c = chains_[d][chain];
    auto g = guard_memo_[d].find(c.pair);
    if (g == guard_memo_[d].end()) {
        // chains of this depth compared through their last pairs only
        const SatPair& mine = pairs_[d][c.pair];
        std::vector<Tangle> smaller, others;
        std::set<std::size_t> done;
        for (const ChainLink& o : chains_[d]) {
            if (!done.insert(o.pair).second || o.pair == c.pair) continue;
            const SatPair& theirs = pairs_[d][o.pair];
            const bool below = theirs.theta == mine.theta && theirs.cluster.embeds(mine.cluster);
            (below ? smaller : others).push_back(pair_alphas(d, o.pair));
        }
        g = guard_memo_[d].emplace(c.pair, std::make_pair(Tangle::disj_all(smaller),
                                                          Tangle::neg(Tangle::disj_all(others)))).first;
    }
    const auto [smaller, gamma] = g->second;
    Tangle a = alpha(d, c);
    Tangle beta = smaller.kind() == TangleKind::Bot
                      ? Tangle::top()
                      : Tangle::box(Tangle::disj(Tangle::neg(smaller), a));
    Tangle r = Tangle::conj(Tangle::conj(a, beta), gamma);
    memo[chain] = r;
    return r;
}

Tangle Translator::depth_formula(std::size_t n, std::optional<std::size_t> member)
{
    if (n >= chains_.size()) return Tangle::bot();
    auto key = std::make_pair(n, member.value_or(sigma_.size()));
    if (auto it = depth_memo_.find(key); it != depth_memo_.end()) return it->second;
    std::vector<Tangle> parts;
    for (std::size_t k = 0; k < chains_[n].size(); ++k) {
        const SatPair& p = pairs_[n][chains_[n][k].pair];
        bool supported = !member;
        if (member)
            for (const auto& [v, t] : p.root_truth)
                if (t[*member]) supported = true;
        if (supported) parts.push_back(Tangle::dot_diamond(delta(n, k)));
    }
    Tangle r = Tangle::disj_all(parts);
    depth_memo_.emplace(key, r);
    return r;
}

Tangle Translator::any_two_tops(std::size_t n)
{
    if (n >= chains_.size()) return Tangle::bot();
    std::map<std::size_t, std::vector<Tangle>> by_pair;
    for (std::size_t k = 0; k < chains_[n].size(); ++k)
        by_pair[chains_[n][k].pair].push_back(Tangle::dot_diamond(delta(n, k)));
    std::vector<Tangle> terms;
    Tangle seen = Tangle::bot();
    for (const auto& [pair, ds] : by_pair) {
        Tangle e = Tangle::disj_all(ds);
        terms.push_back(Tangle::conj(e, seen));
        seen = Tangle::disj(seen, e);
    }
    return Tangle::disj_all(terms);
}

Tangle Translator::split(std::size_t n)
{
    if (auto it = split_memo_.find(n); it != split_memo_.end()) return it->second;
    std::vector<Tangle> parts{any_two_tops(n)};
    if (n + 1 < semi_chains_.size())
        for (const ChainLink& c : semi_chains_[n + 1]) parts.push_back(alpha(n + 1, c));
    Tangle r = Tangle::disj_all(parts);
    split_memo_.emplace(n, r);
    return r;
}

Tangle Translator::chi()
{
    if (chi_) return *chi_;
    eval_final_ = eval_semi_ = eval_conflicts_ = 0;
    std::vector<Tangle> terms;
    for (std::size_t n = 0; n < depth_count(); ++n) {
        std::vector<Tangle> finals;
        for (std::size_t k = 0; k < chains_[n].size(); ++k)
            for (const auto& [v, t] : pairs_[n][chains_[n][k].pair].root_truth)
                if (t[seed_index_]) {
                    finals.push_back(Tangle::conj(tau(v), Tangle::dot_diamond(delta(n, k))));
                    ++eval_final_;
                }
        if (!finals.empty())
            terms.push_back(Tangle::conj_all({depth_formula(n, {}), Tangle::neg(depth_formula(n + 1, {})),
                                              Tangle::neg(split(n)), Tangle::disj_all(finals)}));

        if (n + 1 >= depth_count()) continue;
        // truth of phi at non-final roots of depth n+1, by (valuation, theta)
        std::map<std::pair<std::uint32_t, FactSet>, std::pair<bool, bool>> seen;
        for (const SatPair& p : pairs_[n + 1]) {
            if (p.final) continue;
            for (const auto& [v, t] : p.root_truth) {
                auto& s = seen[{v, p.theta}];
                (t[seed_index_] ? s.first : s.second) = true;
            }
        }
        std::vector<Tangle> semis;
        for (const auto& [key, s] : seen) {
            if (s.first && s.second) ++eval_conflicts_;
            if (!s.first) continue;
            semis.push_back(Tangle::conj(tau(key.first), facts(key.second, n + 1)));
            ++eval_semi_;
        }
        if (!semis.empty())
            terms.push_back(Tangle::conj_all({depth_formula(n, {}), Tangle::neg(depth_formula(n + 1, {})),
                                              split(n), Tangle::disj_all(semis)}));
    }
    chi_ = Tangle::disj_all(terms);
    return *chi_;
}

TranslationReport Translator::report()
{
    TranslationReport r;
    Tangle c = chi();
    r.formula = to_string(phi_);
    r.formula_size = size(phi_);
    r.sigma_size = sigma_.size();
    r.props = props_.size();
    for (std::size_t d = 0; d < depth_count(); ++d) {
        DepthStats s;
        s.depth = d;
        for (const auto& p : pairs_[d]) (p.final ? s.final_pairs : s.semi_pairs)++;
        s.chains = chains_[d].size();
        s.semi_chains = semi_chains_[d].size();
        r.depths.push_back(s);
    }
    r.eval_final = eval_final_;
    r.eval_semi = eval_semi_;
    r.eval_conflicts = eval_conflicts_;
    r.dag_nodes = dag_size(c);
    r.tree_size = tree_size(c);
    r.log2_tree_size = r.tree_size == 0 ? 0 : boost::multiprecision::msb(r.tree_size);
    r.bound_exponent = size_bound_exponent(r.formula_size);
    r.within_bound = size_bound_check(phi_, c);
    return r;
}

std::string Translator::fact_string(const SigmaClosure& sigma, std::uint32_t code)
{
    return "<" + std::to_string(code / sigma.size()) + ">" + to_string(sigma[code % sigma.size()]);
}

boost::multiprecision::cpp_int size_bound_exponent(std::uint64_t n)
{
    boost::multiprecision::cpp_int r = 14 * boost::multiprecision::cpp_int(n) + 1;
    return r << static_cast<unsigned>(14 * n + 6);
}

bool size_bound_check(Mu phi, Tangle chi)
{
    using boost::multiprecision::cpp_int;
    const cpp_int t = tree_size(chi);
    if (t <= 1) return true;
    // log2 t <= B  iff  t <= 2^B; t < 2^(msb+1)
    const cpp_int bound = size_bound_exponent(size(phi));
    const cpp_int msb = boost::multiprecision::msb(t);
    if (msb < bound) return true;
    if (msb > bound) return false;
    return t == (cpp_int(1) << static_cast<unsigned>(msb));
}

} // namespace tangle
