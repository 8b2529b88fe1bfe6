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

/// \file finality.hpp
/// \brief Sigma-final worlds, Sigma-depth and the semantic depth modality.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangle/closure.hpp"
#include "tangle/kripke.hpp"

namespace tangle {

/// Truth of every closure member on one model, with the derived finality
/// data. A member holds where its floor holds.
///
/// A world w is final when some member phi holds at w and every ⊏-successor
/// satisfying phi sees w back. The Sigma-depth of w is 0 when no final world
/// lies strictly above w (in a higher cluster), and otherwise one more than
/// the largest Sigma-depth of such a world.
class SigmaView {
public:
    SigmaView(const KripkeModel& m, const SigmaClosure& sigma);

    const KripkeModel& model() const { return *m_; }
    const SigmaClosure& sigma() const { return *sigma_; }
    const ClusterStructure& clusters() const { return clusters_; }

    const WorldSet& truth(std::size_t member) const { return truth_[member]; }
    bool holds(std::size_t member, std::size_t w) const { return truth_[member].test(w); }

    const WorldSet& final_part() const { return final_; }
    bool is_final(std::size_t w) const { return final_.test(w); }
    /// Everything outside the cluster of w is final.
    bool is_semifinal(std::size_t w) const;

    std::size_t depth(std::size_t w) const { return depth_[w]; }
    /// Sigma-depth of a nonempty set: the largest over its members.
    std::size_t depth(const WorldSet& a) const;
    std::size_t max_depth() const;

    /// Worlds w with a final v, w ⊑ v, of Sigma-depth n where \p member
    /// holds (any member when \p member is empty).
    WorldSet depth_modality(std::size_t n, std::optional<std::size_t> member) const;

    /// Level used by the characteristic formula: Sigma-depth for final
    /// worlds, one less for the others.
    std::size_t level(std::size_t w) const;

private:
    const KripkeModel* m_;
    const SigmaClosure* sigma_;
    ClusterStructure clusters_;
    std::vector<WorldSet> truth_;
    WorldSet final_;
    std::vector<std::size_t> depth_;
};

/// Checks that the submodel induced by \p keep (which must contain the final
/// part) agrees with \p m on every closure member at every kept world.
/// Returns a description of the first disagreement.
std::optional<std::string> prune_check(const KripkeModel& m, const SigmaClosure& sigma,
                                       const WorldSet& keep);

} // namespace tangle
