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

/// \file bisim.hpp
/// \brief Bisimulation between finite models and cluster embedding.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tangle/canonical_cluster.hpp"
#include "tangle/kripke.hpp"

namespace tangle {

using WorldPairs = std::vector<std::pair<std::size_t, std::size_t>>;

/// Block index of every world of the disjoint union m ⊎ n under the coarsest
/// P-bisimulation (worlds of \p n come after those of \p m).
std::vector<std::size_t> bisim_blocks(const KripkeModel& m, const KripkeModel& n,
                                      const std::vector<std::string>& props);

/// Largest P-bisimulation between \p m and \p n, returned only when it is
/// total on \p m and surjective onto \p n.
std::optional<WorldPairs> bisimilar(const KripkeModel& m, const KripkeModel& n,
                                    const std::vector<std::string>& props);

/// Bisimilarity of the submodels induced by \p a and \p b.
std::optional<WorldPairs> restricted_bisimilar(const KripkeModel& m, const WorldSet& a,
                                               const KripkeModel& n, const WorldSet& b,
                                               const std::vector<std::string>& props);

/// Pointed bisimilarity: (m, u) and (n, v) are related by the largest
/// bisimulation.
bool bisimilar_worlds(const KripkeModel& m, std::size_t u, const KripkeModel& n, std::size_t v,
                      const std::vector<std::string>& props);

/// Model collapsed by its largest P-bisimulation (a weakly transitive model
/// stays weakly transitive). \p block_of receives the image of each world.
KripkeModel bisim_quotient(const KripkeModel& m, const std::vector<std::string>& props,
                           std::vector<std::size_t>* block_of = nullptr);

enum class Embedding { Strict, Equivalent, None };

/// Compares two clusters given as world sets of their models: Strict when
/// the first is bisimilar to a proper subcluster of the canonical
/// realization of the second, Equivalent when they are bisimilar, None
/// otherwise.
Embedding cluster_embeds(const KripkeModel& m, const WorldSet& c, const KripkeModel& n,
                         const WorldSet& d, const std::vector<std::string>& props);
Embedding cluster_embeds(const CanonicalCluster& c, const CanonicalCluster& d);

} // namespace tangle
