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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "tangle/mu_formula.hpp"

namespace tangle {

/// Syntax error with the byte offset where parsing failed.
class ParseError : public FormulaError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : FormulaError(msg + " at position " + std::to_string(pos)), pos_(pos)
    {
    }
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Parses the ASCII formula grammar
///
///   phi ::= T | F | ident | ~phi | phi & phi | phi | phi | <>phi | []phi
///         | <.>phi | [.]phi | mu ident. phi | nu ident. phi
///         | <inf>{phi, ..., phi} | (phi)
///
/// into negation normal form. `~` is pushed inward, `<.>`/`[.]` become
/// their defining disjunction/conjunction and `<inf>` its fixed point
/// expansion. Unary operators bind tightest, then `&`, then `|`; binders
/// extend as far right as possible. Identifiers bound by an enclosing binder
/// are variables, all others are propositions. Negating a bound variable is
/// an error.
Mu parse_mu(std::string_view text);

} // namespace tangle
