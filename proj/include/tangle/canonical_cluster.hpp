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

/// \file canonical_cluster.hpp
/// \brief Clusters up to bisimulation, described by how often each
/// propositional valuation occurs.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tangle/kripke.hpp"

namespace tangle {

enum class Multiplicity : std::uint8_t { Absent, One, Saturated };

/// A cluster seen as a map from valuations over an ordered proposition list
/// to Absent / One (a single irreflexive point) / Saturated (several points,
/// or a reflexive one). Valuation v is the bitmask with bit i set iff
/// props()[i] holds.
class CanonicalCluster {
public:
    CanonicalCluster(std::vector<std::string> props, std::vector<Multiplicity> classes);

    /// Canonical form of cluster \p members of \p m, over \p props.
    static CanonicalCluster of(const KripkeModel& m, const WorldSet& members,
                               const std::vector<std::string>& props);

    /// All nonempty canonical clusters over \p props, 3^(2^|props|) - 1 of
    /// them. Throws ModelError when that exceeds \p cap.
    static std::vector<CanonicalCluster> enumerate(const std::vector<std::string>& props,
                                                   std::size_t cap = 100000);

    const std::vector<std::string>& props() const { return props_; }
    Multiplicity at(std::uint32_t valuation) const { return classes_[valuation]; }
    const std::vector<Multiplicity>& classes() const { return classes_; }

    /// Realization: One gives one irreflexive point, Saturated two; all
    /// points are mutually related.
    KripkeModel realize() const;
    std::size_t realized_size() const;
    /// Valuations whose class is not Absent.
    std::vector<std::uint32_t> support() const;

    /// Embedding: support contained and every class at most the other's
    /// (One below Saturated).
    bool embeds_le(const CanonicalCluster& o) const;
    bool embeds(const CanonicalCluster& o) const { return embeds_le(o) && *this != o; }

    std::string to_string() const;
    std::size_t hash() const;

    friend bool operator==(const CanonicalCluster& a, const CanonicalCluster& b)
    {
        return a.props_ == b.props_ && a.classes_ == b.classes_;
    }
    friend bool operator<(const CanonicalCluster& a, const CanonicalCluster& b)
    {
        return a.classes_ < b.classes_;
    }

private:
    std::vector<std::string> props_;
    std::vector<Multiplicity> classes_;
};

/// Valuation bitmask of world \p w over \p props.
std::uint32_t valuation_of(const KripkeModel& m, std::size_t w, const std::vector<std::string>& props);

} // namespace tangle
