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

/// \file translator.hpp
/// \brief Translation of a mu-calculus formula into an equivalent tangle
/// formula over finite weakly transitive frames.
///
/// Vocabulary. Fix a formula phi, its closure Sigma and its propositions P.
/// For a world w of a model, a depth fact (m, psi) holds when some
/// Sigma-final world v ⊒ w of Sigma-depth m satisfies psi.
///
///  - A pair (C, Theta) at depth d is a canonical root cluster C together
///    with the facts of depth < d that hold at a root of Sigma-depth d, in
///    some model where everything above the root cluster is Sigma-final.
///    It is final when the root cluster itself is Sigma-final. For final
///    pairs, theta_up adds the root's own depth-d facts.
///  - A chain of depth n is a sequence of final pairs of depths 0..n, each
///    seeing the previous one's facts, with the non-collapse condition
///    between consecutive clusters. A semi chain ends in a non-final pair.
///
/// Tables are built bottom-up by saturation: depth d+1 roots are every
/// canonical cluster stacked under models whose facts are unions of the
/// theta_up sets of final pairs of depth <= d. Each pair keeps a small
/// witness model (bisimulation-reduced) on which its root is model-checked.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tangle/canonical_cluster.hpp"
#include "tangle/closure.hpp"
#include "tangle/kripke.hpp"
#include "tangle/tangle_formula.hpp"

namespace tangle {

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TranslatorLimits {
    std::size_t max_depth = 32;
    std::size_t max_props = 3;
    std::size_t max_sigma = 2000;
    std::size_t max_unions = 200000;
    std::size_t max_pairs = 200000;  ///< per depth
    std::size_t max_chains = 2000000; ///< per depth
};

/// Sorted codes depth * |Sigma| + member.
using FactSet = std::vector<std::uint32_t>;

struct SatPair {
    CanonicalCluster cluster;
    FactSet theta;
    FactSet theta_up; ///< final pairs only
    std::size_t depth = 0;
    bool final = false;
    /// Bisimulation-reduced witness and the images of its root cluster.
    KripkeModel witness;
    std::vector<std::size_t> root;
    /// Truth of every closure member at the root point of each valuation.
    std::map<std::uint32_t, std::vector<bool>> root_truth;
};

/// A chain of depth d: its last pair (an index into the depth-d pair table)
/// and its prefix (an index into the final chains of depth d-1).
struct ChainLink {
    static constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::size_t prefix = none;
    std::size_t pair = 0;
};

struct DepthStats {
    std::size_t depth = 0;
    std::size_t final_pairs = 0;
    std::size_t semi_pairs = 0;
    std::size_t chains = 0;
    std::size_t semi_chains = 0;
};

struct TranslationReport {
    std::string formula;
    std::size_t formula_size = 0;
    std::size_t sigma_size = 0;
    std::size_t props = 0;
    std::vector<DepthStats> depths;
    std::size_t eval_final = 0;
    std::size_t eval_semi = 0;
    /// (valuation, theta) combinations of non-final roots on which the
    /// witnesses disagree about phi; must be zero.
    std::size_t eval_conflicts = 0;
    std::size_t dag_nodes = 0;
    boost::multiprecision::cpp_int tree_size;
    std::size_t log2_tree_size = 0;
    boost::multiprecision::cpp_int bound_exponent;
    bool within_bound = false;
};

class Translator {
public:
    explicit Translator(Mu phi, TranslatorLimits limits = {});

    Mu formula() const { return phi_; }
    const SigmaClosure& sigma() const { return sigma_; }
    const std::vector<std::string>& props() const { return props_; }

    /// Depths 0..depth_count()-1 carry pairs.
    std::size_t depth_count() const { return pairs_.size(); }
    const std::vector<SatPair>& pairs(std::size_t d) const { return pairs_.at(d); }
    const std::vector<ChainLink>& chains(std::size_t d) const { return chains_.at(d); }
    const std::vector<ChainLink>& semi_chains(std::size_t d) const { return semi_chains_.at(d); }
    /// Pair indices of a chain, depth 0 first.
    std::vector<std::size_t> chain_pairs(std::size_t d, const ChainLink& c) const;

    /// Last pair is a strictly smaller cluster than the previous one, with
    /// the previous pair's facts, and has a point of unique valuation.
    bool irreflexive_step(std::size_t d, const ChainLink& c) const;
    /// a ⊲ b on last pairs: same facts, a's cluster strictly embeds in b's.
    /// Prefixes are not compared, so beta and gamma range over every chain
    /// of the depth.
    bool chain_below(std::size_t d, const ChainLink& a, const ChainLink& b) const;

    Tangle tau(std::uint32_t valuation);
    /// Conjunction fixing every depth fact of depth < \p depth.
    Tangle facts(const FactSet& theta, std::size_t depth);
    /// Alpha of a final or semi chain of depth \p d.
    Tangle alpha(std::size_t d, const ChainLink& c);
    Tangle delta(std::size_t d, std::size_t chain);
    /// <n>psi for closure member \p member, or <n>T when empty.
    Tangle depth_formula(std::size_t n, std::optional<std::size_t> member);
    Tangle split(std::size_t n);
    Tangle chi();

    TranslationReport report();

    static std::string fact_string(const SigmaClosure& sigma, std::uint32_t code);

private:
    void build_tables();
    void add_pair(std::size_t depth, const CanonicalCluster& c, const FactSet& theta, const KripkeModel& upper);
    void build_chains(std::size_t depth);
    bool stack_collapses(const CanonicalCluster& upper, const CanonicalCluster& lower);
    Tangle any_two_tops(std::size_t n);
    Tangle pair_alphas(std::size_t d, std::size_t pair);

    Mu phi_;
    TranslatorLimits limits_;
    SigmaClosure sigma_;
    std::vector<std::string> props_;
    std::size_t seed_index_ = 0;

    std::vector<std::vector<SatPair>> pairs_;
    std::vector<std::map<std::pair<std::vector<Multiplicity>, FactSet>, std::size_t>> pair_index_;
    std::vector<std::vector<ChainLink>> chains_;
    std::vector<std::vector<ChainLink>> semi_chains_;
    std::map<std::pair<std::vector<Multiplicity>, std::vector<Multiplicity>>, bool> collapse_memo_;

    std::unordered_map<std::uint32_t, Tangle> tau_memo_;
    std::map<std::pair<FactSet, std::size_t>, Tangle> facts_memo_;
    std::vector<std::vector<Tangle>> delta_memo_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Tangle> alpha_memo_;
    /// Per depth: disjunction of the alphas of all chains ending in a pair.
    std::vector<std::map<std::size_t, Tangle>> alpha_by_pair_;
    /// Per depth and last pair: (alphas of strictly smaller pairs, gamma).
    std::vector<std::map<std::size_t, std::pair<Tangle, Tangle>>> guard_memo_;
    std::map<std::pair<std::size_t, std::size_t>, Tangle> depth_memo_; ///< member = |Sigma| for T
    std::map<std::size_t, Tangle> split_memo_;
    std::optional<Tangle> chi_;
    std::size_t eval_final_ = 0, eval_semi_ = 0, eval_conflicts_ = 0;
};

/// (14n+1) * 2^(14n+6) for |phi| = n.
boost::multiprecision::cpp_int size_bound_exponent(std::uint64_t n);

/// log2 of the fully expanded size of \p chi is at most the bound exponent
/// for \p phi.
bool size_bound_check(Mu phi, Tangle chi);

} // namespace tangle
