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

#include "tangle/mu_formula.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace tangle {

struct MuNode {
    MuKind kind;
    std::string name;
    const MuNode* a;
    const MuNode* b;
    std::uint32_t id;
    std::uint64_t hash;
    std::vector<std::string> free_vars;
    bool has_fresh;
    std::uint64_t prop_bits; ///< one hashed bit per proposition below
};

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v)
{
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0x100000001b3ULL;
}

std::uint64_t hash_string(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

std::uint64_t prop_bit(const std::string& name) { return std::uint64_t{1} << (hash_string(name) % 64); }

struct Key {
    MuKind kind;
    std::string name;
    const MuNode* a;
    const MuNode* b;
    bool operator==(const Key& o) const
    {
        return kind == o.kind && a == o.a && b == o.b && name == o.name;
    }
};

struct KeyHash {
    std::size_t operator()(const Key& k) const
    {
        std::size_t h = std::hash<std::string>{}(k.name);
        h = h * 31 + static_cast<std::size_t>(k.kind);
        h = h * 1000003u ^ std::hash<const void*>{}(k.a);
        h = h * 1000003u ^ std::hash<const void*>{}(k.b);
        return h;
    }
};

} // namespace

class MuInterner {
public:
    static MuInterner& instance()
    {
        static MuInterner in;
        return in;
    }

    Mu make(MuKind kind, std::string name, const MuNode* a, const MuNode* b)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        Key key{kind, name, a, b};
        if (auto it = table_.find(key); it != table_.end()) return Mu(it->second);

        MuNode n{kind, std::move(name), a, b, static_cast<std::uint32_t>(nodes_.size()), 0, {}, false, 0};
        n.hash = mix(static_cast<std::uint64_t>(kind) + 1, hash_string(n.name));
        if (a) n.hash = mix(n.hash, a->hash);
        if (b) n.hash = mix(n.hash, b->hash);

        if (kind == MuKind::Prop || kind == MuKind::NegProp)
            n.prop_bits = prop_bit(n.name);
        else if (kind != MuKind::Fresh)
            n.prop_bits = (a ? a->prop_bits : 0) | (b ? b->prop_bits : 0);

        switch (kind) {
        case MuKind::Var:
            n.free_vars = {n.name};
            break;
        case MuKind::Fresh:
            n.has_fresh = true;
            break;
        case MuKind::Mu:
        case MuKind::Nu:
            n.free_vars = a->free_vars;
            std::erase(n.free_vars, n.name);
            n.has_fresh = a->has_fresh;
            break;
        default:
            if (a) {
                n.free_vars = a->free_vars;
                n.has_fresh = a->has_fresh;
            }
            if (b) {
                std::vector<std::string> merged;
                std::set_union(n.free_vars.begin(), n.free_vars.end(), b->free_vars.begin(),
                               b->free_vars.end(), std::back_inserter(merged));
                n.free_vars = std::move(merged);
                n.has_fresh = n.has_fresh || b->has_fresh;
            }
        }
        nodes_.push_back(std::move(n));
        const MuNode* p = &nodes_.back();
        table_.emplace(std::move(key), p);
        return Mu(p);
    }

private:
    std::mutex mutex_;
    std::deque<MuNode> nodes_;
    std::unordered_map<Key, const MuNode*, KeyHash> table_;
};

namespace {
Mu make(MuKind k, std::string name = {}, Mu a = {}, Mu b = {})
{
    return MuInterner::instance().make(k, std::move(name), a.node(), b.node());
}
} // namespace

Mu Mu::top() { return make(MuKind::Top); }
Mu Mu::bot() { return make(MuKind::Bot); }
Mu Mu::prop(const std::string& name) { return make(MuKind::Prop, name); }
Mu Mu::neg_prop(const std::string& name) { return make(MuKind::NegProp, name); }
Mu Mu::var(const std::string& name) { return make(MuKind::Var, name); }
Mu Mu::fresh(Mu target) { return make(MuKind::Fresh, {}, target); }
Mu Mu::conj(Mu l, Mu r) { return make(MuKind::And, {}, l, r); }
Mu Mu::disj(Mu l, Mu r) { return make(MuKind::Or, {}, l, r); }
Mu Mu::diamond(Mu f) { return make(MuKind::Diamond, {}, f); }
Mu Mu::box(Mu f) { return make(MuKind::Box, {}, f); }
Mu Mu::mu(const std::string& var, Mu body) { return make(MuKind::Mu, var, body); }
Mu Mu::nu(const std::string& var, Mu body) { return make(MuKind::Nu, var, body); }
Mu Mu::dot_diamond(Mu f) { return disj(f, diamond(f)); }
Mu Mu::dot_box(Mu f) { return conj(f, box(f)); }

Mu Mu::conj_all(const std::vector<Mu>& fs)
{
    if (fs.empty()) return top();
    Mu acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
    return acc;
}

Mu Mu::disj_all(const std::vector<Mu>& fs)
{
    if (fs.empty()) return bot();
    Mu acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
    return acc;
}

MuKind Mu::kind() const { return node_->kind; }
const std::string& Mu::name() const { return node_->name; }
Mu Mu::left() const { return Mu(node_->a); }
Mu Mu::right() const { return Mu(node_->b); }
std::uint32_t Mu::id() const { return node_->id; }
std::uint64_t Mu::stable_hash() const { return node_->hash; }
const std::vector<std::string>& Mu::free_vars() const { return node_->free_vars; }
bool Mu::has_fresh() const { return node_->has_fresh; }

std::optional<Mu> Mu::as_dot_diamond() const
{
    if (kind() != MuKind::Or) return std::nullopt;
    Mu r = right();
    if (r.kind() == MuKind::Diamond && r.child() == left()) return left();
    return std::nullopt;
}

std::optional<Mu> Mu::as_dot_box() const
{
    if (kind() != MuKind::And) return std::nullopt;
    Mu r = right();
    if (r.kind() == MuKind::Box && r.child() == left()) return left();
    return std::nullopt;
}

namespace {

Mu negate_rec(Mu f, std::vector<std::string>& bound, std::unordered_map<Mu, Mu, MuHash>& memo)
{
    const bool cacheable = f.closed();
    if (cacheable)
        if (auto it = memo.find(f); it != memo.end()) return it->second;

    Mu r;
    switch (f.kind()) {
    case MuKind::Top: r = Mu::bot(); break;
    case MuKind::Bot: r = Mu::top(); break;
    case MuKind::Prop: r = Mu::neg_prop(f.name()); break;
    case MuKind::NegProp: r = Mu::prop(f.name()); break;
    case MuKind::Var:
        if (std::find(bound.begin(), bound.end(), f.name()) == bound.end())
            throw FormulaError("cannot negate free variable '" + f.name() + "'");
        r = f;
        break;
    case MuKind::Fresh: r = Mu::fresh(negate_rec(f.child(), bound, memo)); break;
    case MuKind::And:
        r = Mu::disj(negate_rec(f.left(), bound, memo), negate_rec(f.right(), bound, memo));
        break;
    case MuKind::Or:
        r = Mu::conj(negate_rec(f.left(), bound, memo), negate_rec(f.right(), bound, memo));
        break;
    case MuKind::Diamond: r = Mu::box(negate_rec(f.child(), bound, memo)); break;
    case MuKind::Box: r = Mu::diamond(negate_rec(f.child(), bound, memo)); break;
    case MuKind::Mu:
    case MuKind::Nu: {
        bound.push_back(f.name());
        Mu body = negate_rec(f.child(), bound, memo);
        bound.pop_back();
        r = f.kind() == MuKind::Mu ? Mu::nu(f.name(), body) : Mu::mu(f.name(), body);
        break;
    }
    }
    if (cacheable) memo.emplace(f, r);
    return r;
}

} // namespace

Mu negate(Mu f)
{
    std::vector<std::string> bound;
    // only closed formulas are memoized, and interned nodes live forever
    thread_local std::unordered_map<Mu, Mu, MuHash> memo;
    return negate_rec(f, bound, memo);
}

bool Mu::may_mention_prop(const std::string& name) const { return (node_->prop_bits & prop_bit(name)) != 0; }

namespace {

Mu subst_rec(Mu f, const std::string& var, Mu rep, std::unordered_map<Mu, Mu, MuHash>& memo)
{
    const auto& fv = f.free_vars();
    if (!std::binary_search(fv.begin(), fv.end(), var)) return f;
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    Mu r;
    switch (f.kind()) {
    case MuKind::Var: r = rep; break;
    case MuKind::And: r = Mu::conj(subst_rec(f.left(), var, rep, memo), subst_rec(f.right(), var, rep, memo)); break;
    case MuKind::Or: r = Mu::disj(subst_rec(f.left(), var, rep, memo), subst_rec(f.right(), var, rep, memo)); break;
    case MuKind::Diamond: r = Mu::diamond(subst_rec(f.child(), var, rep, memo)); break;
    case MuKind::Box: r = Mu::box(subst_rec(f.child(), var, rep, memo)); break;
    case MuKind::Mu: r = Mu::mu(f.name(), subst_rec(f.child(), var, rep, memo)); break;
    case MuKind::Nu: r = Mu::nu(f.name(), subst_rec(f.child(), var, rep, memo)); break;
    default: r = f; break;
    }
    memo.emplace(f, r);
    return r;
}

} // namespace

Mu substitute(Mu f, const std::string& var, Mu replacement)
{
    if (!replacement.closed())
        throw FormulaError("substitution requires a closed replacement");
    std::unordered_map<Mu, Mu, MuHash> memo;
    return subst_rec(f, var, replacement, memo);
}

std::string fresh_name(Mu fresh_var)
{
    std::ostringstream os;
    os << "x_" << std::hex << (fresh_var.child().stable_hash() & 0xffffffffffULL);
    return os.str();
}

namespace {

// Contexts: 0 anywhere, 1 operand of |, 2 operand of &, 3 operand of a unary operator.
void print_rec(Mu f, int ctx, std::string& out)
{
    switch (f.kind()) {
    case MuKind::Top: out += "T"; return;
    case MuKind::Bot: out += "F"; return;
    case MuKind::Prop:
    case MuKind::Var: out += f.name(); return;
    case MuKind::NegProp: out += "~" + f.name(); return;
    case MuKind::Fresh: out += fresh_name(f); return;
    case MuKind::Diamond:
    case MuKind::Box:
        out += f.kind() == MuKind::Diamond ? "<>" : "[]";
        print_rec(f.child(), 3, out);
        return;
    case MuKind::And:
    case MuKind::Or: {
        const bool is_and = f.kind() == MuKind::And;
        const int level = is_and ? 2 : 1;
        const bool paren = ctx > level;
        if (paren) out += "(";
        print_rec(f.left(), level, out);
        out += is_and ? " & " : " | ";
        print_rec(f.right(), level + 1, out);
        if (paren) out += ")";
        return;
    }
    case MuKind::Mu:
    case MuKind::Nu: {
        const bool paren = ctx > 0;
        if (paren) out += "(";
        out += f.kind() == MuKind::Mu ? "mu " : "nu ";
        out += f.name() + ".";
        print_rec(f.child(), 0, out);
        if (paren) out += ")";
        return;
    }
    }
}

} // namespace

std::string to_string(Mu f)
{
    std::string out;
    print_rec(f, 0, out);
    return out;
}

std::uint64_t size(Mu f)
{
    std::unordered_map<Mu, std::uint64_t, MuHash> memo;
    std::function<std::uint64_t(Mu)> rec = [&](Mu g) -> std::uint64_t {
        if (auto it = memo.find(g); it != memo.end()) return it->second;
        std::uint64_t s = 0;
        switch (g.kind()) {
        case MuKind::NegProp: s = 2; break;
        case MuKind::And:
        case MuKind::Or: s = 1 + rec(g.left()) + rec(g.right()); break;
        case MuKind::Diamond:
        case MuKind::Box:
        case MuKind::Mu:
        case MuKind::Nu: s = 1 + rec(g.child()); break;
        default: s = 1; break;
        }
        memo.emplace(g, s);
        return s;
    };
    return rec(f);
}

bool alternation_free(Mu f)
{
    // Environment maps each bound variable to the polarity of its innermost binder.
    std::unordered_set<Mu, MuHash> done;
    std::map<std::string, MuKind> env;
    std::function<bool(Mu)> rec = [&](Mu g) -> bool {
        if (g.closed() && done.count(g)) return true;
        bool ok = true;
        switch (g.kind()) {
        case MuKind::And:
        case MuKind::Or: ok = rec(g.left()) && rec(g.right()); break;
        case MuKind::Diamond:
        case MuKind::Box: ok = rec(g.child()); break;
        case MuKind::Mu:
        case MuKind::Nu: {
            for (const auto& y : g.free_vars()) {
                auto it = env.find(y);
                if (it != env.end() && it->second != g.kind()) return false;
            }
            auto saved = env.find(g.name()) != env.end()
                             ? std::optional<MuKind>(env[g.name()])
                             : std::nullopt;
            env[g.name()] = g.kind();
            ok = rec(g.child());
            if (saved) env[g.name()] = *saved;
            else env.erase(g.name());
            break;
        }
        default: break;
        }
        if (ok && g.closed()) done.insert(g);
        return ok;
    };
    return rec(f);
}

std::set<std::string> props(Mu f)
{
    std::set<std::string> out;
    std::unordered_set<Mu, MuHash> seen;
    std::vector<Mu> stack{f};
    while (!stack.empty()) {
        Mu g = stack.back();
        stack.pop_back();
        if (!seen.insert(g).second) continue;
        switch (g.kind()) {
        case MuKind::Prop:
        case MuKind::NegProp: out.insert(g.name()); break;
        case MuKind::And:
        case MuKind::Or:
            stack.push_back(g.left());
            stack.push_back(g.right());
            break;
        case MuKind::Diamond:
        case MuKind::Box:
        case MuKind::Mu:
        case MuKind::Nu: stack.push_back(g.child()); break;
        default: break;
        }
    }
    return out;
}

std::size_t dag_size(Mu f)
{
    std::unordered_set<Mu, MuHash> seen;
    std::vector<Mu> stack{f};
    while (!stack.empty()) {
        Mu g = stack.back();
        stack.pop_back();
        if (!seen.insert(g).second) continue;
        if (g.kind() == MuKind::Fresh) continue;
        if (g.left().valid()) stack.push_back(g.left());
        if (g.right().valid()) stack.push_back(g.right());
    }
    return seen.size();
}

} // namespace tangle

namespace tangle {

Mu expand_tangle(const std::vector<Mu>& gamma)
{
    if (gamma.empty()) throw FormulaError("tangle of an empty multiset");
    std::string x = "x";
    for (int k = 0;; ++k) {
        bool clash = false;
        for (Mu g : gamma) {
            const auto& fv = g.free_vars();
            if (std::binary_search(fv.begin(), fv.end(), x) || (g.may_mention_prop(x) && props(g).count(x)))
                clash = true;
        }
        if (!clash) break;
        x = "x" + std::to_string(k);
    }
    const Mu xv = Mu::var(x);
    std::vector<Mu> disjuncts;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        std::vector<Mu> parts{Mu::dot_diamond(Mu::conj(gamma[i], xv))};
        for (std::size_t j = 0; j < gamma.size(); ++j)
            if (j != i) parts.push_back(Mu::diamond(Mu::conj(gamma[j], xv)));
        Mu d = Mu::conj_all(parts);
        if (std::find(disjuncts.begin(), disjuncts.end(), d) == disjuncts.end())
            disjuncts.push_back(d);
    }
    return Mu::nu(x, Mu::disj_all(disjuncts));
}

} // namespace tangle
