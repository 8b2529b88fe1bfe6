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

#include "tangle/checker.hpp"

namespace tangle {

WorldSet ModelChecker::diamond(const WorldSet& s) const
{
    WorldSet r = m_->none();
    s.for_each([&](std::size_t v) { r |= m_->pred(v); });
    return r;
}

WorldSet ModelChecker::box(const WorldSet& s) const { return diamond(s.complement()).complement(); }

WorldSet ModelChecker::eval(Mu f, const Env& env)
{
    Env local = env;
    return eval_rec(f, local);
}

WorldSet ModelChecker::eval_rec(Mu f, Env& env)
{
    const bool cacheable = f.closed();
    if (cacheable)
        if (auto it = closed_.find(f); it != closed_.end()) return it->second;
    WorldSet r;
    switch (f.kind()) {
    case MuKind::Top: r = m_->all(); break;
    case MuKind::Bot: r = m_->none(); break;
    case MuKind::Prop: r = m_->prop(f.name()); break;
    case MuKind::NegProp: r = m_->prop(f.name()).complement(); break;
    case MuKind::Var: {
        auto it = env.find(f.name());
        if (it == env.end()) throw FormulaError("unbound variable " + f.name());
        r = it->second;
        break;
    }
    case MuKind::Fresh: r = eval_rec(f.child(), env); break;
    case MuKind::And: r = eval_rec(f.left(), env) & eval_rec(f.right(), env); break;
    case MuKind::Or: r = eval_rec(f.left(), env) | eval_rec(f.right(), env); break;
    case MuKind::Diamond: r = diamond(eval_rec(f.child(), env)); break;
    case MuKind::Box: r = box(eval_rec(f.child(), env)); break;
    case MuKind::Mu:
    case MuKind::Nu: {
        auto saved = env.find(f.name()) == env.end() ? std::optional<WorldSet>{}
                                                     : std::optional<WorldSet>{env[f.name()]};
        WorldSet x = f.kind() == MuKind::Mu ? m_->none() : m_->all();
        for (;;) {
            env[f.name()] = x;
            WorldSet next = eval_rec(f.child(), env);
            if (next == x) break;
            x = std::move(next);
        }
        if (saved) env[f.name()] = *saved;
        else env.erase(f.name());
        r = x;
        break;
    }
    }
    if (cacheable) closed_.emplace(f, r);
    return r;
}

WorldSet ModelChecker::tangle(const std::vector<WorldSet>& members) const
{
    WorldSet x = m_->all();
    for (;;) {
        std::vector<WorldSet> dia;
        dia.reserve(members.size());
        for (const auto& s : members) dia.push_back(diamond(s & x));
        WorldSet next = m_->none();
        for (std::size_t i = 0; i < members.size(); ++i) {
            WorldSet part = (members[i] & x) | dia[i];
            for (std::size_t j = 0; j < members.size(); ++j)
                if (j != i) part &= dia[j];
            next |= part;
        }
        if (next == x) return x;
        x = std::move(next);
    }
}

WorldSet ModelChecker::eval(Tangle root)
{
    if (auto it = tangles_.find(root); it != tangles_.end()) return it->second;
    // explicit stack: translated formulas nest far deeper than the call stack allows
    std::vector<std::pair<Tangle, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [f, ready] = stack.back();
        stack.pop_back();
        if (tangles_.count(f)) continue;
        const auto& ch = f.children();
        if (!ready) {
            stack.push_back({f, true});
            for (Tangle c : ch)
                if (!tangles_.count(c)) stack.push_back({c, false});
            continue;
        }
        auto at = [&](std::size_t i) -> const WorldSet& { return tangles_.at(ch[i]); };
        WorldSet r;
        switch (f.kind()) {
        case TangleKind::Top: r = m_->all(); break;
        case TangleKind::Bot: r = m_->none(); break;
        case TangleKind::Prop: r = m_->prop(f.name()); break;
        case TangleKind::Not: r = at(0).complement(); break;
        case TangleKind::And: r = at(0) & at(1); break;
        case TangleKind::Or: r = at(0) | at(1); break;
        case TangleKind::Diamond: r = diamond(at(0)); break;
        case TangleKind::Box: r = box(at(0)); break;
        case TangleKind::TangleInf: {
            std::vector<WorldSet> sets;
            for (std::size_t i = 0; i < ch.size(); ++i) sets.push_back(at(i));
            r = tangle(sets);
            break;
        }
        }
        tangles_.emplace(f, std::move(r));
    }
    return tangles_.at(root);
}

WorldSet eval(const KripkeModel& m, Mu f, const Env& env) { return ModelChecker(m).eval(f, env); }
WorldSet eval(const KripkeModel& m, Tangle f) { return ModelChecker(m).eval(f); }

WorldSet eval_tangle_direct(const KripkeModel& m, const std::vector<WorldSet>& members)
{
    if (members.empty()) throw FormulaError("tangle of an empty multiset");
    ClusterStructure cs(m);
    WorldSet result = m.none();
    for (std::size_t c = 0; c < cs.count(); ++c) {
        // largest S inside the cluster meeting the condition; the condition
        // only gets harder as S shrinks, so deleting offenders converges to it
        WorldSet s = cs.members(c);
        for (bool changed = true; changed;) {
            changed = false;
            s.for_each([&](std::size_t u) {
                const WorldSet seen = m.succ(u) & s;
                std::size_t missing = 0;
                bool self_covers = true;
                for (const auto& mem : members) {
                    if (seen.intersects(mem)) continue;
                    ++missing;
                    self_covers = self_covers && mem.test(u);
                }
                if (missing == 0 || (missing == 1 && self_covers)) return;
                s.reset(u);
                changed = true;
            });
        }
        if (s.empty()) continue;
        // everything that reaches S reflexively
        s.for_each([&](std::size_t v) {
            result |= m.pred(v);
            result.set(v);
        });
    }
    return result;
}

WorldSet eval_tangle_direct(const KripkeModel& m, const std::vector<Mu>& gamma)
{
    ModelChecker mc(m);
    std::vector<WorldSet> sets;
    for (Mu g : gamma) sets.push_back(mc.eval(g));
    return eval_tangle_direct(m, sets);
}

namespace {

WorldSet enum_eval(const KripkeModel& m, Mu f, Env& env)
{
    const std::size_t n = m.size();
    switch (f.kind()) {
    case MuKind::Top: return m.all();
    case MuKind::Bot: return m.none();
    case MuKind::Prop: return m.prop(f.name());
    case MuKind::NegProp: return m.prop(f.name()).complement();
    case MuKind::Var: {
        auto it = env.find(f.name());
        if (it == env.end()) throw FormulaError("unbound variable " + f.name());
        return it->second;
    }
    case MuKind::Fresh: return enum_eval(m, f.child(), env);
    case MuKind::And: return enum_eval(m, f.left(), env) & enum_eval(m, f.right(), env);
    case MuKind::Or: return enum_eval(m, f.left(), env) | enum_eval(m, f.right(), env);
    case MuKind::Diamond:
    case MuKind::Box: {
        WorldSet s = enum_eval(m, f.child(), env);
        WorldSet r = m.none();
        for (std::size_t w = 0; w < n; ++w) {
            bool any = m.succ(w).intersects(s);
            bool all = m.succ(w).subset_of(s);
            r.assign(w, f.kind() == MuKind::Diamond ? any : all);
        }
        return r;
    }
    case MuKind::Mu:
    case MuKind::Nu: {
        const bool least = f.kind() == MuKind::Mu;
        auto saved = env.count(f.name()) ? std::optional<WorldSet>{env[f.name()]} : std::nullopt;
        WorldSet acc = least ? m.all() : m.none();
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
            WorldSet x(n);
            for (std::size_t w = 0; w < n; ++w) x.assign(w, code >> w & 1u);
            env[f.name()] = x;
            if (enum_eval(m, f.child(), env) != x) continue;
            if (least) acc &= x;
            else acc |= x;
        }
        if (saved) env[f.name()] = *saved;
        else env.erase(f.name());
        return acc;
    }
    }
    return m.none();
}

} // namespace

WorldSet eval_by_fixpoint_enumeration(const KripkeModel& m, Mu f, const Env& env)
{
    if (m.size() > 10) throw ModelError("fixed point enumeration limited to 10 worlds");
    Env local = env;
    return enum_eval(m, f, local);
}

} // namespace tangle
