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

/// \file kripke.hpp
/// \brief Finite Kripke models over weakly transitive frames and their
/// cluster structure.

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tangle/world_set.hpp"

namespace tangle {

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Worlds are dense indices 0..size()-1, each with a unique label.
class KripkeModel {
public:
    KripkeModel() = default;
    /// \p n worlds labelled "0", "1", ...; no edges, empty valuation.
    explicit KripkeModel(std::size_t n);

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }

    /// Appends a world. Throws ModelError on a duplicate label.
    std::size_t add_world(const std::string& label);
    const std::string& label(std::size_t w) const { return labels_[w]; }
    std::optional<std::size_t> find(const std::string& label) const;

    void add_edge(std::size_t u, std::size_t v);
    void remove_edge(std::size_t u, std::size_t v);
    /// u ⊏ v
    bool edge(std::size_t u, std::size_t v) const { return succ_[u].test(v); }
    /// u ⊑ v (reflexive closure)
    bool sees_refl(std::size_t u, std::size_t v) const { return u == v || edge(u, v); }
    bool reflexive(std::size_t w) const { return edge(w, w); }
    const WorldSet& succ(std::size_t u) const { return succ_[u]; }
    const WorldSet& pred(std::size_t v) const { return pred_[v]; }
    std::size_t edge_count() const;

    /// Makes \p name true exactly at the worlds where \p value is set.
    void set_prop(const std::string& name, std::size_t w, bool value = true);
    /// Worlds where \p name holds; empty for an unknown proposition.
    WorldSet prop(const std::string& name) const;
    bool holds(const std::string& name, std::size_t w) const;
    const std::map<std::string, WorldSet>& valuation() const { return val_; }
    /// Declares a proposition (true nowhere) so that it appears in output.
    void declare_prop(const std::string& name);

    /// A triple a ⊏ b ⊏ c with a != c and not a ⊏ c, if any.
    std::optional<std::array<std::size_t, 3>> wk4_violation() const;
    bool is_wk4() const { return !wk4_violation().has_value(); }
    bool is_transitive() const;
    /// Smallest weakly transitive relation containing the current one.
    void close_weakly_transitive();

    WorldSet all() const { return WorldSet(size(), true); }
    WorldSet none() const { return WorldSet(size()); }

    friend bool operator==(const KripkeModel& a, const KripkeModel& b);

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    std::vector<WorldSet> succ_;
    std::vector<WorldSet> pred_;
    std::map<std::string, WorldSet> val_;
};

/// Submodel induced by \p keep. Worlds keep their labels and relative order;
/// \p old_index, when given, receives the original index of each new world.
KripkeModel restrict(const KripkeModel& m, const WorldSet& keep,
                     std::vector<std::size_t>* old_index = nullptr);

/// Disjoint union; worlds of later models are shifted and relabelled
/// "<k>:<label>" when labels clash.
KripkeModel disjoint_union(const std::vector<const KripkeModel*>& parts);

/// Puts \p lower below \p upper: every world of \p lower sees every world of
/// \p upper. Worlds of \p upper keep indices 0..|upper|-1; \p lower follows.
KripkeModel stack(const KripkeModel& upper, const KripkeModel& lower);

enum class ClusterOrder { Below, BelowOrEqual, Incomparable };

/// Partition of a model into maximal clusters (classes of mutual ⊑).
class ClusterStructure {
public:
    explicit ClusterStructure(const KripkeModel& m);

    std::size_t count() const { return members_.size(); }
    std::size_t cluster_of(std::size_t w) const { return cluster_of_[w]; }
    const WorldSet& members(std::size_t c) const { return members_[c]; }

    /// a ≺ b: every world of b is seen strictly (not seeing back) from a.
    bool below(std::size_t a, std::size_t b) const { return below_[a].test(b); }
    /// a ⪯ b: every world of b is ⊑-reachable from a.
    bool below_eq(std::size_t a, std::size_t b) const { return below_eq_[a].test(b); }
    ClusterOrder compare(std::size_t a, std::size_t b) const;

    /// Longest ≺-chain above cluster c (0 when c is ≺-maximal).
    std::size_t depth(std::size_t c) const { return depth_[c]; }
    std::size_t world_depth(std::size_t w) const { return depth_[cluster_of_[w]]; }
    /// Clusters in an order where every cluster comes after all clusters
    /// strictly above it.
    const std::vector<std::size_t>& top_down() const { return top_down_; }

private:
    std::vector<std::size_t> cluster_of_;
    std::vector<WorldSet> members_;
    std::vector<WorldSet> below_;
    std::vector<WorldSet> below_eq_;
    std::vector<std::size_t> depth_;
    std::vector<std::size_t> top_down_;
};

} // namespace tangle
