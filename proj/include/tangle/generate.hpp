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

/// \file generate.hpp
/// \brief Exhaustive and random generation of finite wK4 models.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tangle/kripke.hpp"
#include "tangle/mu_formula.hpp"

namespace tangle {

/// Largest world count accepted by the exhaustive enumerators.
inline constexpr std::size_t max_enumerated_worlds = 4;

/// Weakly transitive frames on exactly \p n worlds, one per isomorphism class.
std::vector<KripkeModel> wk4_frames(std::size_t n);

/// Calls \p visit on every wK4 model over \p props with 1..max_worlds worlds,
/// one per isomorphism class. Throws ModelError beyond max_enumerated_worlds.
void for_each_model(const std::vector<std::string>& props, std::size_t max_worlds,
                    const std::function<void(const KripkeModel&)>& visit);

std::vector<KripkeModel> enumerate_models(const std::vector<std::string>& props, std::size_t max_worlds);

/// Random wK4 model with \p size worlds: random edges at a density drawn per
/// model, then weakly transitive closure. Depends only on the arguments.
KripkeModel random_model(const std::vector<std::string>& props, std::size_t size, std::uint64_t seed);

/// Random closed NNF formula over \p props with at most \p depth nested
/// operators. Bound variables are named x0, x1, ... by nesting level.
Mu random_formula(std::mt19937_64& rng, const std::vector<std::string>& props, int depth);

} // namespace tangle
