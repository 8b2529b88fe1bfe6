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

/// \file batch.hpp
/// \brief Evaluating formulas over many models at once.
///
/// The parallel kernels split the model list across OpenMP threads. Each
/// has a serial counterpart built on ModelChecker, kept as the reference the
/// kernels are tested and benchmarked against.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tangle/kripke.hpp"
#include "tangle/mu_formula.hpp"
#include "tangle/tangle_formula.hpp"

namespace tangle {

/// A tangle DAG flattened into topological order, evaluated with one 64-bit
/// mask per node on models of at most 64 worlds.
class CompiledTangle {
public:
    static constexpr std::size_t max_worlds = 64;

    explicit CompiledTangle(const std::vector<Tangle>& roots);
    explicit CompiledTangle(Tangle root) : CompiledTangle(std::vector<Tangle>{root}) {}

    std::size_t node_count() const { return kinds_.size(); }
    std::size_t root_count() const { return roots_.size(); }

    /// Truth masks of every root on \p m; \p scratch is reused between calls.
    /// Throws ModelError when \p m has more than max_worlds worlds.
    std::vector<std::uint64_t> eval(const KripkeModel& m, std::vector<std::uint64_t>& scratch) const;
    std::vector<std::uint64_t> eval(const KripkeModel& m) const;

private:
    std::vector<TangleKind> kinds_;
    std::vector<std::uint32_t> arg_;   ///< prop index, or offset into kids_
    std::vector<std::uint32_t> arity_;
    std::vector<std::uint32_t> kids_;
    std::vector<std::string> props_;
    std::vector<std::uint32_t> roots_;
};

std::uint64_t to_mask(const WorldSet& s);
WorldSet from_mask(std::uint64_t mask, std::size_t universe);

/// Truth sets of every root on every model; result[k][r] is root r on
/// models[k]. Models above CompiledTangle::max_worlds fall back to
/// ModelChecker.
std::vector<std::vector<WorldSet>> batch_eval(const std::vector<Tangle>& roots,
                                              const std::vector<KripkeModel>& models);
std::vector<std::vector<WorldSet>> batch_eval_serial(const std::vector<Tangle>& roots,
                                                     const std::vector<KripkeModel>& models);

std::vector<WorldSet> batch_eval(Mu f, const std::vector<KripkeModel>& models);
std::vector<WorldSet> batch_eval_serial(Mu f, const std::vector<KripkeModel>& models);

/// Indices of the models on which \p a and \p b differ somewhere.
std::vector<std::size_t> batch_disagreements(Mu a, Tangle b, const std::vector<KripkeModel>& models);

/// OpenMP threads the kernels use (1 without OpenMP).
int batch_threads();

} // namespace tangle
