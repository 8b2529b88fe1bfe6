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

#include "tangle/closure.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

namespace tangle {

namespace {

class OrderedSet {
public:
    bool insert(Mu f)
    {
        if (!seen_.insert(f).second) return false;
        items_.push_back(f);
        return true;
    }
    std::vector<Mu> take() { return std::move(items_); }

private:
    std::unordered_set<Mu, MuHash> seen_;
    std::vector<Mu> items_;
};

void sub_star_into(Mu f, OrderedSet& out, std::unordered_set<Mu, MuHash>& expanded)
{
    if (!expanded.insert(f).second) return;
    if (auto d = f.as_dot_diamond()) {
        out.insert(*d);
        sub_star_into(*d, out, expanded);
        return;
    }
    if (auto b = f.as_dot_box()) {
        out.insert(*b);
        sub_star_into(*b, out, expanded);
        return;
    }
    switch (f.kind()) {
    case MuKind::NegProp:
        out.insert(f);
        out.insert(Mu::prop(f.name()));
        return;
    case MuKind::And:
    case MuKind::Or:
        out.insert(f);
        sub_star_into(f.left(), out, expanded);
        sub_star_into(f.right(), out, expanded);
        return;
    case MuKind::Diamond:
    case MuKind::Box:
        out.insert(f.child());
        sub_star_into(f.child(), out, expanded);
        return;
    case MuKind::Mu:
    case MuKind::Nu: {
        Mu body = substitute(f.child(), f.name(), Mu::fresh(f));
        out.insert(body);
        sub_star_into(body, out, expanded);
        return;
    }
    default:
        out.insert(f);
        return;
    }
}

} // namespace

std::vector<Mu> sub_star(Mu f)
{
    OrderedSet out;
    std::unordered_set<Mu, MuHash> expanded;
    sub_star_into(f, out, expanded);
    return out.take();
}

Mu normalize_modality(Mu f)
{
    std::string prefix; // 'D' for <.>, 'B' for [.]
    Mu base = f;
    for (;;) {
        if (auto d = base.as_dot_diamond()) {
            prefix += 'D';
            base = *d;
        } else if (auto b = base.as_dot_box()) {
            prefix += 'B';
            base = *b;
        } else {
            break;
        }
    }
    std::string merged;
    for (char c : prefix)
        if (merged.empty() || merged.back() != c) merged += c;
    // merged now alternates; S4 leaves at most three alternations
    std::string reduced = merged;
    if (merged.size() > 3) reduced = merged.substr(0, merged.size() % 2 == 0 ? 2 : 3);
    if (reduced == prefix) return f;
    Mu r = base;
    for (auto it = reduced.rbegin(); it != reduced.rend(); ++it)
        r = *it == 'D' ? Mu::dot_diamond(r) : Mu::dot_box(r);
    return r;
}

SigmaClosure::SigmaClosure(Mu seed, std::size_t cap) : seed_(seed)
{
    if (!seed.closed()) throw ClosureError("closure of a formula with free variables");
    std::deque<Mu> work;
    auto add = [&](Mu f) {
        if (index_.count(f)) return;
        if (members_.size() >= cap)
            throw ClosureError("closure exceeds cap of " + std::to_string(cap) + " members");
        index_.emplace(f, members_.size());
        members_.push_back(f);
        work.push_back(f);
    };
    add(seed);
    while (!work.empty()) {
        Mu f = work.front();
        work.pop_front();
        for (Mu g : sub_star(f)) add(g);
        add(negate(f));
        add(normalize_modality(Mu::dot_diamond(f)));
    }

    negation_.resize(members_.size());
    std::set<std::string> atoms;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        negation_[i] = index_.at(negate(members_[i]));
        for (const auto& p : props(members_[i])) atoms.insert(p);
        // record every fresh variable named by a member
        std::vector<Mu> stack{members_[i]};
        std::unordered_set<Mu, MuHash> seen;
        while (!stack.empty()) {
            Mu g = stack.back();
            stack.pop_back();
            if (!g.has_fresh() || !seen.insert(g).second) continue;
            if (g.kind() == MuKind::Fresh) {
                fresh_targets_.emplace(g, g.child());
                continue;
            }
            if (g.left().valid()) stack.push_back(g.left());
            if (g.right().valid()) stack.push_back(g.right());
        }
    }
    atoms_.assign(atoms.begin(), atoms.end());
    floors_.reserve(members_.size());
    for (Mu m : members_) floors_.push_back(floor(m));
}

std::optional<std::size_t> SigmaClosure::index_of(Mu f) const
{
    auto it = index_.find(f);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> SigmaClosure::fixed_point_members() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i].is_binder()) out.push_back(i);
    return out;
}

Mu SigmaClosure::floor(Mu f) const
{
    if (!f.has_fresh()) return f;
    if (auto it = floor_memo_.find(f); it != floor_memo_.end()) return it->second;
    Mu r;
    switch (f.kind()) {
    case MuKind::Fresh:
        if (!fresh_targets_.count(f))
            throw FormulaError("unknown fresh variable " + fresh_name(f));
        r = floor(f.child());
        break;
    case MuKind::And: r = Mu::conj(floor(f.left()), floor(f.right())); break;
    case MuKind::Or: r = Mu::disj(floor(f.left()), floor(f.right())); break;
    case MuKind::Diamond: r = Mu::diamond(floor(f.child())); break;
    case MuKind::Box: r = Mu::box(floor(f.child())); break;
    case MuKind::Mu: r = Mu::mu(f.name(), floor(f.child())); break;
    case MuKind::Nu: r = Mu::nu(f.name(), floor(f.child())); break;
    default: r = f; break;
    }
    floor_memo_.emplace(f, r);
    return r;
}

} // namespace tangle
