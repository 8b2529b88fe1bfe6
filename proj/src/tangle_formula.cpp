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

#include "tangle/tangle_formula.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace tangle {

struct TangleNode {
    TangleKind kind;
    std::string name;
    std::vector<Tangle> children;
    std::uint32_t id;
    std::uint64_t hash;
};

namespace {

struct Key {
    TangleKind kind;
    std::string name;
    std::vector<const TangleNode*> children;
    bool operator==(const Key&) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const
    {
        std::size_t h = std::hash<std::string>{}(k.name) * 31 + static_cast<std::size_t>(k.kind);
        for (auto* c : k.children) h = h * 1000003u ^ std::hash<const void*>{}(c);
        return h;
    }
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v)
{
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0x100000001b3ULL;
}

} // namespace

class TangleInterner {
public:
    static TangleInterner& instance()
    {
        static TangleInterner in;
        return in;
    }

    Tangle make(TangleKind kind, std::string name, std::vector<Tangle> children)
    {
        Key key{kind, name, {}};
        key.children.reserve(children.size());
        for (auto c : children) key.children.push_back(c.node());

        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = table_.find(key); it != table_.end()) return Tangle(it->second);
        std::uint64_t h = static_cast<std::uint64_t>(kind) + 7;
        for (unsigned char ch : name) h = mix(h, ch);
        for (auto c : children) h = mix(h, c.stable_hash());
        nodes_.push_back(TangleNode{kind, std::move(name), std::move(children),
                                    static_cast<std::uint32_t>(nodes_.size()), h});
        const TangleNode* p = &nodes_.back();
        table_.emplace(std::move(key), p);
        return Tangle(p);
    }

private:
    std::mutex mutex_;
    std::deque<TangleNode> nodes_;
    std::unordered_map<Key, const TangleNode*, KeyHash> table_;
};

namespace {
Tangle make(TangleKind k, std::vector<Tangle> ch = {}, std::string name = {})
{
    return TangleInterner::instance().make(k, std::move(name), std::move(ch));
}
} // namespace

Tangle Tangle::top() { return make(TangleKind::Top); }
Tangle Tangle::bot() { return make(TangleKind::Bot); }
Tangle Tangle::prop(const std::string& name) { return make(TangleKind::Prop, {}, name); }

Tangle Tangle::neg(Tangle f)
{
    switch (f.kind()) {
    case TangleKind::Top: return bot();
    case TangleKind::Bot: return top();
    case TangleKind::Not: return f.child();
    default: return make(TangleKind::Not, {f});
    }
}

Tangle Tangle::conj(Tangle l, Tangle r)
{
    if (l.kind() == TangleKind::Bot || r.kind() == TangleKind::Bot) return bot();
    if (l.kind() == TangleKind::Top) return r;
    if (r.kind() == TangleKind::Top) return l;
    return make(TangleKind::And, {l, r});
}

Tangle Tangle::disj(Tangle l, Tangle r)
{
    if (l.kind() == TangleKind::Top || r.kind() == TangleKind::Top) return top();
    if (l.kind() == TangleKind::Bot) return r;
    if (r.kind() == TangleKind::Bot) return l;
    return make(TangleKind::Or, {l, r});
}

Tangle Tangle::diamond(Tangle f)
{
    if (f.kind() == TangleKind::Bot) return f;
    return make(TangleKind::Diamond, {f});
}

Tangle Tangle::box(Tangle f)
{
    if (f.kind() == TangleKind::Top) return f;
    return make(TangleKind::Box, {f});
}

Tangle Tangle::tangle(std::vector<Tangle> members)
{
    if (members.empty()) throw FormulaError("tangle of an empty multiset");
    std::sort(members.begin(), members.end(), [](Tangle a, Tangle b) {
        if (a.stable_hash() != b.stable_hash()) return a.stable_hash() < b.stable_hash();
        return a.id() < b.id();
    });
    return make(TangleKind::TangleInf, std::move(members));
}

namespace {

// balanced, so long conjunctions stay shallow
template <class Op>
Tangle fold_balanced(const std::vector<Tangle>& fs, std::size_t b, std::size_t e, Op op)
{
    if (e - b == 1) return fs[b];
    const std::size_t mid = b + (e - b) / 2;
    return op(fold_balanced(fs, b, mid, op), fold_balanced(fs, mid, e, op));
}

} // namespace

Tangle Tangle::conj_all(const std::vector<Tangle>& fs)
{
    if (fs.empty()) return top();
    return fold_balanced(fs, 0, fs.size(), [](Tangle l, Tangle r) { return conj(l, r); });
}

Tangle Tangle::disj_all(const std::vector<Tangle>& fs)
{
    if (fs.empty()) return bot();
    return fold_balanced(fs, 0, fs.size(), [](Tangle l, Tangle r) { return disj(l, r); });
}

TangleKind Tangle::kind() const { return node_->kind; }
const std::string& Tangle::name() const { return node_->name; }
const std::vector<Tangle>& Tangle::children() const { return node_->children; }
std::uint32_t Tangle::id() const { return node_->id; }
std::uint64_t Tangle::stable_hash() const { return node_->hash; }

namespace {

// Contexts as for mu formulas: 0 anywhere, 1 under |, 2 under &, 3 under a unary operator.
void print_node(Tangle f, int ctx, std::string& out,
                const std::function<bool(Tangle, std::string&)>& leaf_hook)
{
    if (leaf_hook && leaf_hook(f, out)) return;
    switch (f.kind()) {
    case TangleKind::Top: out += "T"; return;
    case TangleKind::Bot: out += "F"; return;
    case TangleKind::Prop: out += f.name(); return;
    case TangleKind::Not:
        out += "~";
        print_node(f.child(), 3, out, leaf_hook);
        return;
    case TangleKind::Diamond:
    case TangleKind::Box:
        out += f.kind() == TangleKind::Diamond ? "<>" : "[]";
        print_node(f.child(), 3, out, leaf_hook);
        return;
    case TangleKind::And:
    case TangleKind::Or: {
        const bool is_and = f.kind() == TangleKind::And;
        const int level = is_and ? 2 : 1;
        const bool paren = ctx > level;
        if (paren) out += "(";
        print_node(f.children()[0], level, out, leaf_hook);
        out += is_and ? " & " : " | ";
        print_node(f.children()[1], level + 1, out, leaf_hook);
        if (paren) out += ")";
        return;
    }
    case TangleKind::TangleInf: {
        out += "<inf>{";
        bool first = true;
        for (auto c : f.children()) {
            if (!first) out += ", ";
            first = false;
            print_node(c, 0, out, leaf_hook);
        }
        out += "}";
        return;
    }
    }
}

template <class F>
void post_order(Tangle root, F&& visit)
{
    // ids are dense and children are interned before their parents
    std::vector<bool> seen(root.id() + 1);
    std::vector<std::pair<Tangle, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [f, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            visit(f);
            continue;
        }
        if (seen[f.id()]) continue;
        seen[f.id()] = true;
        stack.push_back({f, true});
        for (auto it = f.children().rbegin(); it != f.children().rend(); ++it)
            if (!seen[it->id()]) stack.push_back({*it, false});
    }
}

} // namespace

std::string to_string(Tangle f)
{
    std::string out;
    print_node(f, 0, out, {});
    return out;
}

std::string to_dag_string(Tangle root)
{
    std::unordered_map<Tangle, std::size_t, TangleHash> parents;
    std::vector<Tangle> order;
    post_order(root, [&](Tangle f) {
        order.push_back(f);
        for (auto c : f.children()) ++parents[c];
    });

    auto is_leaf = [](Tangle f) {
        return f.kind() == TangleKind::Top || f.kind() == TangleKind::Bot ||
               f.kind() == TangleKind::Prop;
    };
    std::unordered_map<Tangle, std::string, TangleHash> names;
    std::string out;
    std::function<bool(Tangle, std::string&)> hook;
    Tangle current;
    hook = [&](Tangle f, std::string& o) {
        if (f == current) return false;
        auto it = names.find(f);
        if (it == names.end()) return false;
        o += it->second;
        return true;
    };
    for (auto f : order) {
        if (f == root || is_leaf(f) || parents[f] < 2) continue;
        std::string name = "d" + std::to_string(names.size());
        current = f;
        out += name + " := ";
        print_node(f, 0, out, hook);
        out += "\n";
        names.emplace(f, std::move(name));
    }
    current = root;
    print_node(root, 0, out, hook);
    out += "\n";
    return out;
}

std::size_t dag_size(Tangle f)
{
    std::size_t n = 0;
    post_order(f, [&](Tangle) { ++n; });
    return n;
}

boost::multiprecision::cpp_int tree_size(Tangle root)
{
    using boost::multiprecision::cpp_int;
    // exact in 128 bits unless a sum overflows, then again in cpp_int
    using Wide = unsigned __int128;
    std::vector<Wide> fast(root.id() + 1);
    bool overflow = false;
    post_order(root, [&](Tangle f) {
        Wide s = 1;
        for (auto c : f.children()) overflow = overflow || __builtin_add_overflow(s, fast[c.id()], &s);
        fast[f.id()] = s;
    });
    if (!overflow) {
        Wide v = fast[root.id()];
        return (cpp_int(static_cast<std::uint64_t>(v >> 64)) << 64) + static_cast<std::uint64_t>(v);
    }
    std::unordered_map<Tangle, cpp_int, TangleHash> memo;
    post_order(root, [&](Tangle f) {
        cpp_int s = 1;
        for (auto c : f.children()) s += memo.at(c);
        memo.emplace(f, std::move(s));
    });
    return memo.at(root);
}

Mu to_mu(Tangle root)
{
    std::unordered_map<Tangle, Mu, TangleHash> memo;
    post_order(root, [&](Tangle f) {
        auto sub = [&](std::size_t i) { return memo.at(f.children()[i]); };
        Mu r;
        switch (f.kind()) {
        case TangleKind::Top: r = Mu::top(); break;
        case TangleKind::Bot: r = Mu::bot(); break;
        case TangleKind::Prop: r = Mu::prop(f.name()); break;
        case TangleKind::Not: r = negate(sub(0)); break;
        case TangleKind::And: r = Mu::conj(sub(0), sub(1)); break;
        case TangleKind::Or: r = Mu::disj(sub(0), sub(1)); break;
        case TangleKind::Diamond: r = Mu::diamond(sub(0)); break;
        case TangleKind::Box: r = Mu::box(sub(0)); break;
        case TangleKind::TangleInf: {
            std::vector<Mu> gamma;
            for (std::size_t i = 0; i < f.children().size(); ++i) gamma.push_back(sub(i));
            r = expand_tangle(gamma);
            break;
        }
        }
        memo.emplace(f, r);
    });
    return memo.at(root);
}

namespace {

// Recover the multiset from the leftmost disjunct of an expansion body.
std::optional<std::vector<Mu>> decode_tangle(Mu f)
{
    if (f.kind() != MuKind::Nu) return std::nullopt;
    const Mu x = Mu::var(f.name());
    auto member_of = [&](Mu g) -> std::optional<Mu> {
        if (g.kind() == MuKind::And && g.right() == x) return g.left();
        return std::nullopt;
    };
    auto is_first = [&](Mu g) {
        auto d = g.as_dot_diamond();
        return d && member_of(*d);
    };

    Mu d = f.child();
    while (d.kind() == MuKind::Or && !is_first(d)) d = d.left();

    std::vector<Mu> rest;
    while (!is_first(d)) {
        if (d.kind() != MuKind::And || d.right().kind() != MuKind::Diamond) return std::nullopt;
        auto m = member_of(d.right().child());
        if (!m) return std::nullopt;
        rest.push_back(*m);
        d = d.left();
    }
    std::vector<Mu> gamma{*member_of(*d.as_dot_diamond())};
    gamma.insert(gamma.end(), rest.rbegin(), rest.rend());
    for (Mu g : gamma)
        if (!g.closed()) return std::nullopt;
    if (expand_tangle(gamma) != f) return std::nullopt;
    return gamma;
}

} // namespace

std::optional<Tangle> from_mu(Mu f)
{
    std::unordered_map<Mu, std::optional<Tangle>, MuHash> memo;
    std::function<std::optional<Tangle>(Mu)> rec = [&](Mu g) -> std::optional<Tangle> {
        if (auto it = memo.find(g); it != memo.end()) return it->second;
        std::optional<Tangle> r;
        auto un = [&](Mu c, Tangle (*op)(Tangle)) -> std::optional<Tangle> {
            auto t = rec(c);
            return t ? std::optional<Tangle>(op(*t)) : std::nullopt;
        };
        auto bin = [&](Tangle (*op)(Tangle, Tangle)) -> std::optional<Tangle> {
            auto l = rec(g.left());
            auto rr = rec(g.right());
            return l && rr ? std::optional<Tangle>(op(*l, *rr)) : std::nullopt;
        };
        switch (g.kind()) {
        case MuKind::Top: r = Tangle::top(); break;
        case MuKind::Bot: r = Tangle::bot(); break;
        case MuKind::Prop: r = Tangle::prop(g.name()); break;
        case MuKind::NegProp: r = Tangle::neg(Tangle::prop(g.name())); break;
        case MuKind::And: r = bin(&Tangle::conj); break;
        case MuKind::Or: r = bin(&Tangle::disj); break;
        case MuKind::Diamond: r = un(g.child(), &Tangle::diamond); break;
        case MuKind::Box: r = un(g.child(), &Tangle::box); break;
        case MuKind::Nu:
            if (auto gamma = decode_tangle(g)) {
                std::vector<Tangle> members;
                bool ok = true;
                for (Mu m : *gamma) {
                    auto t = rec(m);
                    if (!t) {
                        ok = false;
                        break;
                    }
                    members.push_back(*t);
                }
                if (ok) r = Tangle::tangle(std::move(members));
            }
            break;
        case MuKind::Mu:
            // the NNF of a negated tangle
            if (g.closed())
                if (auto t = rec(negate(g))) r = Tangle::neg(*t);
            break;
        default: break;
        }
        memo.emplace(g, r);
        return r;
    };
    return rec(f);
}

bool in_tangle_fragment(Mu f) { return from_mu(f).has_value(); }

bool well_formed(Tangle root)
{
    bool ok = true;
    post_order(root, [&](Tangle f) {
        const std::size_t n = f.children().size();
        switch (f.kind()) {
        case TangleKind::Top:
        case TangleKind::Bot: ok = ok && n == 0; break;
        case TangleKind::Prop: ok = ok && n == 0 && !f.name().empty(); break;
        case TangleKind::Not:
        case TangleKind::Diamond:
        case TangleKind::Box: ok = ok && n == 1; break;
        case TangleKind::And:
        case TangleKind::Or: ok = ok && n == 2; break;
        case TangleKind::TangleInf: ok = ok && n >= 1; break;
        }
    });
    return ok;
}

bool expansion_alternation_free(Tangle root)
{
    // to_mu gives every <inf> node its own binder whose body mentions only
    // that binder's variable and the expansions of the members. A binder can
    // therefore only alternate with an enclosing one through a member with a
    // free variable; track that per node.
    std::vector<bool> open(root.id() + 1);
    bool ok = true;
    post_order(root, [&](Tangle f) {
        bool o = false;
        for (Tangle c : f.children()) o = o || open[c.id()];
        if (f.kind() == TangleKind::TangleInf && o) ok = false;
        open[f.id()] = o;
    });
    return ok && !open[root.id()];
}

} // namespace tangle
