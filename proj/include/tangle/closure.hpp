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

/// \file closure.hpp
/// \brief Modified subformulas, the closure set of a formula and the floor
/// (closed form) of its members.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tangle/mu_formula.hpp"

namespace tangle {

/// Modified subformula set. Binder bodies are instantiated with the fresh
/// variable of their binder; modalities (including <.> and [.]) contribute
/// their operand but not themselves. Result is in discovery order.
std::vector<Mu> sub_star(Mu f);

/// Rewrites the outer chain of <.>/[.] prefixes to one of the seven S4
/// modalities: repeated prefixes merge and <.>[.]<.>[.] / [.]<.>[.]<.>
/// shorten to <.>[.] / [.]<.>.
Mu normalize_modality(Mu f);

class ClosureError : public FormulaError {
public:
    using FormulaError::FormulaError;
};

/// Closure of a seed formula under sub_star, negation and <.>-prefixing,
/// modulo normalize_modality.
class SigmaClosure {
public:
    static constexpr std::size_t default_cap = 20000;

    explicit SigmaClosure(Mu seed, std::size_t cap = default_cap);

    Mu seed() const { return seed_; }
    const std::vector<Mu>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    Mu operator[](std::size_t i) const { return members_[i]; }
    std::optional<std::size_t> index_of(Mu f) const;
    bool contains(Mu f) const { return index_.count(f) != 0; }

    /// Propositions of the closure (fresh variables excluded), sorted.
    const std::vector<std::string>& atoms() const { return atoms_; }

    /// Index of the negation of member i.
    std::size_t negation_of(std::size_t i) const { return negation_[i]; }

    /// Members that are fixed-point formulas.
    std::vector<std::size_t> fixed_point_members() const;

    /// Closed form: every fresh variable x_psi replaced by the closed form of
    /// psi. Throws FormulaError when \p f mentions a fresh variable that the
    /// closure does not name.
    Mu floor(Mu f) const;
    Mu floor(std::size_t i) const { return floors_[i]; }

private:
    Mu seed_;
    std::vector<Mu> members_;
    std::unordered_map<Mu, std::size_t, MuHash> index_;
    std::vector<std::size_t> negation_;
    std::vector<std::string> atoms_;
    std::unordered_map<Mu, Mu, MuHash> fresh_targets_;
    mutable std::unordered_map<Mu, Mu, MuHash> floor_memo_;
    std::vector<Mu> floors_;
};

} // namespace tangle
