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

#include "tangle/kripke.hpp"

#include <algorithm>
#include <numeric>

namespace tangle {

KripkeModel::KripkeModel(std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) add_world(std::to_string(i));
}

std::size_t KripkeModel::add_world(const std::string& label)
{
    if (index_.count(label)) throw ModelError("duplicate world label '" + label + "'");
    const std::size_t w = labels_.size();
    labels_.push_back(label);
    index_.emplace(label, w);
    for (auto& s : succ_) s.resize(w + 1);
    for (auto& s : pred_) s.resize(w + 1);
    for (auto& [_, s] : val_) s.resize(w + 1);
    succ_.emplace_back(w + 1);
    pred_.emplace_back(w + 1);
    return w;
}

std::optional<std::size_t> KripkeModel::find(const std::string& label) const
{
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void KripkeModel::add_edge(std::size_t u, std::size_t v)
{
    succ_[u].set(v);
    pred_[v].set(u);
}

void KripkeModel::remove_edge(std::size_t u, std::size_t v)
{
    succ_[u].reset(v);
    pred_[v].reset(u);
}

std::size_t KripkeModel::edge_count() const
{
    std::size_t n = 0;
    for (const auto& s : succ_) n += s.count();
    return n;
}

void KripkeModel::declare_prop(const std::string& name)
{
    val_.try_emplace(name, size());
}

void KripkeModel::set_prop(const std::string& name, std::size_t w, bool value)
{
    auto it = val_.try_emplace(name, size()).first;
    it->second.assign(w, value);
}

WorldSet KripkeModel::prop(const std::string& name) const
{
    auto it = val_.find(name);
    return it == val_.end() ? none() : it->second;
}

bool KripkeModel::holds(const std::string& name, std::size_t w) const
{
    auto it = val_.find(name);
    return it != val_.end() && it->second.test(w);
}

std::optional<std::array<std::size_t, 3>> KripkeModel::wk4_violation() const
{
    for (std::size_t a = 0; a < size(); ++a) {
        std::optional<std::array<std::size_t, 3>> found;
        succ_[a].for_each([&](std::size_t b) {
            if (found) return;
            WorldSet missing = succ_[b];
            missing.subtract(succ_[a]);
            missing.reset(a);
            if (!missing.empty()) found = std::array<std::size_t, 3>{a, b, missing.first()};
        });
        if (found) return found;
    }
    return std::nullopt;
}

bool KripkeModel::is_transitive() const
{
    for (std::size_t a = 0; a < size(); ++a) {
        bool ok = true;
        succ_[a].for_each([&](std::size_t b) { ok = ok && succ_[b].subset_of(succ_[a]); });
        if (!ok) return false;
    }
    return true;
}

void KripkeModel::close_weakly_transitive()
{
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t a = 0; a < size(); ++a) {
            WorldSet add(size());
            succ_[a].for_each([&](std::size_t b) { add |= succ_[b]; });
            add.reset(a);
            add.subtract(succ_[a]);
            if (add.empty()) continue;
            changed = true;
            add.for_each([&](std::size_t c) { add_edge(a, c); });
        }
    }
}

bool operator==(const KripkeModel& a, const KripkeModel& b)
{
    if (a.labels_ != b.labels_ || a.succ_ != b.succ_) return false;
    // propositions true nowhere compare equal to absent ones
    auto nonempty = [](const std::map<std::string, WorldSet>& v) {
        std::map<std::string, WorldSet> r;
        for (const auto& [k, s] : v)
            if (!s.empty()) r.emplace(k, s);
        return r;
    };
    return nonempty(a.val_) == nonempty(b.val_);
}

KripkeModel restrict(const KripkeModel& m, const WorldSet& keep, std::vector<std::size_t>* old_index)
{
    std::vector<std::size_t> olds = keep.members();
    std::vector<std::size_t> fresh(m.size(), m.size());
    KripkeModel r;
    for (std::size_t i = 0; i < olds.size(); ++i) {
        fresh[olds[i]] = i;
        r.add_world(m.label(olds[i]));
    }
    for (std::size_t i = 0; i < olds.size(); ++i)
        (m.succ(olds[i]) & keep).for_each([&](std::size_t v) { r.add_edge(i, fresh[v]); });
    for (const auto& [p, s] : m.valuation()) {
        r.declare_prop(p);
        (s & keep).for_each([&](std::size_t v) { r.set_prop(p, fresh[v]); });
    }
    if (old_index) *old_index = std::move(olds);
    return r;
}

KripkeModel disjoint_union(const std::vector<const KripkeModel*>& parts)
{
    KripkeModel r;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const KripkeModel& m = *parts[k];
        const std::size_t base = r.size();
        for (std::size_t w = 0; w < m.size(); ++w) {
            std::string label = m.label(w);
            while (r.find(label)) label = std::to_string(k) + ":" + label;
            r.add_world(label);
        }
        for (std::size_t w = 0; w < m.size(); ++w)
            m.succ(w).for_each([&](std::size_t v) { r.add_edge(base + w, base + v); });
        for (const auto& [p, s] : m.valuation()) {
            r.declare_prop(p);
            s.for_each([&](std::size_t v) { r.set_prop(p, base + v); });
        }
    }
    return r;
}

KripkeModel stack(const KripkeModel& upper, const KripkeModel& lower)
{
    KripkeModel r = disjoint_union({&upper, &lower});
    for (std::size_t c = upper.size(); c < r.size(); ++c)
        for (std::size_t w = 0; w < upper.size(); ++w) r.add_edge(c, w);
    return r;
}

ClusterStructure::ClusterStructure(const KripkeModel& m) : cluster_of_(m.size(), 0)
{
    const std::size_t n = m.size();
    // reflexive-transitive reachability
    std::vector<WorldSet> reach(n);
    for (std::size_t u = 0; u < n; ++u) {
        reach[u] = m.succ(u);
        reach[u].set(u);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t u = 0; u < n; ++u)
            if (reach[u].test(k)) reach[u] |= reach[k];

    std::vector<bool> assigned(n, false);
    for (std::size_t u = 0; u < n; ++u) {
        if (assigned[u]) continue;
        WorldSet c(n);
        reach[u].for_each([&](std::size_t v) {
            if (reach[v].test(u)) c.set(v);
        });
        const std::size_t id = members_.size();
        c.for_each([&](std::size_t v) {
            assigned[v] = true;
            cluster_of_[v] = id;
        });
        members_.push_back(c);
    }

    const std::size_t k = members_.size();
    below_.assign(k, WorldSet(k));
    below_eq_.assign(k, WorldSet(k));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            bool strict = true, weak = true;
            members_[b].for_each([&](std::size_t v) {
                bool s = false, w = false;
                members_[a].for_each([&](std::size_t u) {
                    if (m.edge(u, v) && !m.sees_refl(v, u)) s = true;
                    if (m.sees_refl(u, v)) w = true;
                });
                strict = strict && s;
                weak = weak && w;
            });
            below_[a].assign(b, strict);
            below_eq_[a].assign(b, weak);
        }
    }

    depth_.assign(k, 0);
    std::vector<bool> done(k, false);
    auto visit = [&](auto&& self, std::size_t c) -> std::size_t {
        if (done[c]) return depth_[c];
        done[c] = true; // ≺ is irreflexive on wK4 frames; guards against cycles otherwise
        std::size_t d = 0;
        below_[c].for_each([&](std::size_t b) {
            if (b != c) d = std::max(d, self(self, b) + 1);
        });
        depth_[c] = d;
        return d;
    };
    for (std::size_t c = 0; c < k; ++c) visit(visit, c);
    top_down_.resize(k);
    std::iota(top_down_.begin(), top_down_.end(), 0);
    std::stable_sort(top_down_.begin(), top_down_.end(),
                     [&](std::size_t a, std::size_t b) { return depth_[a] < depth_[b]; });
}

ClusterOrder ClusterStructure::compare(std::size_t a, std::size_t b) const
{
    if (below(a, b)) return ClusterOrder::Below;
    if (below_eq(a, b)) return ClusterOrder::BelowOrEqual;
    return ClusterOrder::Incomparable;
}

} // namespace tangle
