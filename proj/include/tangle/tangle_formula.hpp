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

/// \file tangle_formula.hpp
/// \brief Binder-free tangle logic formulas, hash-consed into a DAG.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tangle/mu_formula.hpp"

namespace tangle {

enum class TangleKind : std::uint8_t { Top, Bot, Prop, Not, And, Or, Diamond, Box, TangleInf };

struct TangleNode;

/// Handle to an interned tangle-logic formula. The smart constructors fold
/// the units T and F (empty conjunction is T, empty disjunction is F) and
/// nothing else.
class Tangle {
public:
    Tangle() = default;

    static Tangle top();
    static Tangle bot();
    static Tangle prop(const std::string& name);
    static Tangle neg(Tangle f);
    static Tangle conj(Tangle l, Tangle r);
    static Tangle disj(Tangle l, Tangle r);
    static Tangle diamond(Tangle f);
    static Tangle box(Tangle f);
    /// <inf>{...}; the argument is a nonempty multiset.
    static Tangle tangle(std::vector<Tangle> members);
    static Tangle conj_all(const std::vector<Tangle>& fs);
    static Tangle disj_all(const std::vector<Tangle>& fs);
    static Tangle implies(Tangle l, Tangle r) { return disj(neg(l), r); }
    static Tangle dot_diamond(Tangle f) { return disj(f, diamond(f)); }

    bool valid() const { return node_ != nullptr; }
    TangleKind kind() const;
    const std::string& name() const;
    /// Operands: one for Not and the modalities, two for And/Or, the
    /// multiset (sorted) for TangleInf.
    const std::vector<Tangle>& children() const;
    Tangle child() const { return children().front(); }
    std::uint32_t id() const;
    std::uint64_t stable_hash() const;

    const TangleNode* node() const { return node_; }
    friend bool operator==(Tangle a, Tangle b) { return a.node_ == b.node_; }
    friend bool operator!=(Tangle a, Tangle b) { return a.node_ != b.node_; }

private:
    explicit Tangle(const TangleNode* n) : node_(n) {}
    friend class TangleInterner;
    const TangleNode* node_ = nullptr;
};

struct TangleHash {
    std::size_t operator()(Tangle f) const { return std::hash<const void*>{}(f.node()); }
};

/// Fully parenthesized-as-needed text; exponential for heavily shared DAGs.
std::string to_string(Tangle f);

/// Shared-DAG rendering: every node with more than one parent becomes a
/// numbered definition `dN := ...`, and the last line is the root.
std::string to_dag_string(Tangle f);

std::size_t dag_size(Tangle f);

/// Number of symbols of the fully expanded tree, counted over the DAG.
boost::multiprecision::cpp_int tree_size(Tangle f);

/// Expansion into the mu-calculus (NNF) with every <inf> replaced by its
/// greatest fixed point definition.
Mu to_mu(Tangle f);

/// Inverse of to_mu on the tangle fragment; nullopt when \p f uses a binder
/// that is not a tangle expansion.
std::optional<Tangle> from_mu(Mu f);

/// True iff every binder in \p f is the expansion of a tangle.
bool in_tangle_fragment(Mu f);

/// Arity check of every DAG node; linear in the DAG.
bool well_formed(Tangle f);

/// Alternation freedom of to_mu(f), decided on the DAG without expanding.
bool expansion_alternation_free(Tangle f);

} // namespace tangle
