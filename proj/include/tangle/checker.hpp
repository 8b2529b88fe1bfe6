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

/// \file checker.hpp
/// \brief Evaluation of mu-calculus and tangle formulas on finite models.

#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tangle/kripke.hpp"
#include "tangle/mu_formula.hpp"
#include "tangle/tangle_formula.hpp"

namespace tangle {

using Env = std::map<std::string, WorldSet>;

/// Evaluator bound to one model. Closed subformulas and tangle nodes are
/// memoized, so repeated queries over a shared DAG are cheap. Not
/// thread-safe; use one checker per thread.
class ModelChecker {
public:
    explicit ModelChecker(const KripkeModel& m) : m_(&m) {}

    const KripkeModel& model() const { return *m_; }

    /// Fixed points by Knaster-Tarski iteration from the empty set (mu) or
    /// the full set (nu). A fresh variable evaluates as its target formula.
    /// Throws FormulaError on a variable not bound by \p env.
    WorldSet eval(Mu f, const Env& env = {});
    WorldSet eval(Tangle f);

    bool holds(Mu f, std::size_t w) { return eval(f).test(w); }
    bool holds(Tangle f, std::size_t w) { return eval(f).test(w); }

    /// Worlds with a ⊏-successor in \p s.
    WorldSet diamond(const WorldSet& s) const;
    /// Worlds all of whose ⊏-successors are in \p s.
    WorldSet box(const WorldSet& s) const;

    /// Greatest X with X ⊆ OR_i ( <.>(S_i & X) & AND_{j != i} <>(S_j & X) ).
    WorldSet tangle(const std::vector<WorldSet>& members) const;

private:
    WorldSet eval_rec(Mu f, Env& env);

    const KripkeModel* m_;
    std::unordered_map<Mu, WorldSet, MuHash> closed_;
    std::unordered_map<Tangle, WorldSet, TangleHash> tangles_;
};

WorldSet eval(const KripkeModel& m, Mu f, const Env& env = {});
WorldSet eval(const KripkeModel& m, Tangle f);

/// Tangle truth read off the cluster structure, without fixed points: w
/// satisfies the tangle iff some cluster C with w ⊑ C contains a nonempty
/// S in which every point sees, inside S, a witness for every member of the
/// multiset except at most one member that it satisfies itself.
/// \p members holds the truth set of each multiset element.
WorldSet eval_tangle_direct(const KripkeModel& m, const std::vector<WorldSet>& members);
WorldSet eval_tangle_direct(const KripkeModel& m, const std::vector<Mu>& gamma);

/// Reference semantics for small models: mu is the intersection and nu the
/// union of all exact fixed points, found by trying every subset of worlds.
/// Throws ModelError above 10 worlds.
WorldSet eval_by_fixpoint_enumeration(const KripkeModel& m, Mu f, const Env& env = {});

} // namespace tangle
