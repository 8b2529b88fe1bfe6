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

/// \file mu_formula.hpp
/// \brief Hash-consed modal mu-calculus formulas in negation normal form.
///
/// Every formula is interned: two structurally equal formulas are the same
/// node, so equality and hashing are pointer operations. Nodes are never
/// freed. Construction is serialized by a mutex; reading a node is lock-free.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tangle {

enum class MuKind : std::uint8_t {
    Top,
    Bot,
    Prop,
    NegProp,
    Var,
    Fresh, ///< x_psi: propositional stand-in for the fixed-point formula psi
    And,
    Or,
    Diamond,
    Box,
    Mu,
    Nu,
};

struct MuNode;

/// Handle to an interned formula.
class Mu {
public:
    Mu() = default;

    static Mu top();
    static Mu bot();
    static Mu prop(const std::string& name);
    static Mu neg_prop(const std::string& name);
    static Mu var(const std::string& name);
    /// Fresh variable named after \p target (normally a mu or nu formula).
    static Mu fresh(Mu target);
    static Mu conj(Mu l, Mu r);
    static Mu disj(Mu l, Mu r);
    static Mu diamond(Mu f);
    static Mu box(Mu f);
    static Mu mu(const std::string& var, Mu body);
    static Mu nu(const std::string& var, Mu body);
    /// <.>f := f | <>f
    static Mu dot_diamond(Mu f);
    /// [.]f := f & []f
    static Mu dot_box(Mu f);

    static Mu conj_all(const std::vector<Mu>& fs);
    static Mu disj_all(const std::vector<Mu>& fs);

    bool valid() const { return node_ != nullptr; }
    MuKind kind() const;
    /// Proposition, variable or binder variable name.
    const std::string& name() const;
    Mu left() const;
    Mu right() const;
    /// Operand of a modality, body of a binder, or target of a fresh variable.
    Mu child() const { return left(); }
    std::uint32_t id() const;
    /// Structural hash, stable across runs.
    std::uint64_t stable_hash() const;
    /// Free (bound-able) variables, sorted. Fresh variables are not included.
    const std::vector<std::string>& free_vars() const;
    bool closed() const { return free_vars().empty(); }
    bool has_fresh() const;
    /// False only if no proposition called \p name occurs (fresh targets
    /// excluded); a cheap filter before props().
    bool may_mention_prop(const std::string& name) const;

    bool is_binder() const { return kind() == MuKind::Mu || kind() == MuKind::Nu; }
    /// Operand if this is the sugar <.>psi, i.e. psi | <>psi.
    std::optional<Mu> as_dot_diamond() const;
    /// Operand if this is the sugar [.]psi, i.e. psi & []psi.
    std::optional<Mu> as_dot_box() const;

    const MuNode* node() const { return node_; }

    friend bool operator==(Mu a, Mu b) { return a.node_ == b.node_; }
    friend bool operator!=(Mu a, Mu b) { return a.node_ != b.node_; }
    friend bool operator<(Mu a, Mu b) { return a.id() < b.id(); }

private:
    explicit Mu(const MuNode* n) : node_(n) {}
    friend class MuInterner;
    const MuNode* node_ = nullptr;
};

struct MuHash {
    std::size_t operator()(Mu f) const { return std::hash<const void*>{}(f.node()); }
};

class FormulaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Negation pushed to the atoms, dualizing binders: ~nu x.f(x) = mu x.~f(~x).
/// Fresh variables dualize to the fresh variable of the negated target.
/// Throws FormulaError on a free (unbound) variable, which has no NNF negation.
Mu negate(Mu f);

/// Replace free occurrences of \p var by the closed formula \p replacement.
Mu substitute(Mu f, const std::string& var, Mu replacement);

/// Printed name of a fresh variable, derived from the stable hash of its target.
std::string fresh_name(Mu fresh_var);

/// Text in the formula grammar. Parsing the output yields the same node
/// (fresh variables print as their names and are not parseable).
std::string to_string(Mu f);

/// Number of symbols: one per node occurrence in the tree, negated atoms
/// count two, binders count one (variable included).
std::uint64_t size(Mu f);

/// No mu binder's variable occurs free inside a nu subformula of its body,
/// and vice versa.
bool alternation_free(Mu f);

/// Proposition names occurring in \p f (not looking through fresh variables).
std::set<std::string> props(Mu f);

/// Number of distinct nodes reachable from \p f.
std::size_t dag_size(Mu f);

/// Tangle modality as a greatest fixed point:
/// nu x. OR_i ( <.>(g_i & x) & AND_{j != i} <>(g_j & x) ).
/// Identical disjuncts are merged. Throws FormulaError on an empty multiset.
Mu expand_tangle(const std::vector<Mu>& gamma);

} // namespace tangle

template <>
struct std::hash<tangle::Mu> {
    std::size_t operator()(tangle::Mu f) const { return tangle::MuHash{}(f); }
};
