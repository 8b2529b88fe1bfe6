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

#include "tangle/finality.hpp"

#include <algorithm>

#include "tangle/checker.hpp"

namespace tangle {

SigmaView::SigmaView(const KripkeModel& m, const SigmaClosure& sigma)
    : m_(&m), sigma_(&sigma), clusters_(m), final_(m.size()), depth_(m.size(), 0)
{
    ModelChecker mc(m);
    truth_.reserve(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) truth_.push_back(mc.eval(sigma.floor(i)));

    for (std::size_t w = 0; w < m.size(); ++w) {
        for (const auto& t : truth_) {
            if (!t.test(w)) continue;
            WorldSet escape = m.succ(w) & t;
            escape.subtract(m.pred(w));
            if (escape.empty()) {
                final_.set(w);
                break;
            }
        }
    }

    // clusters above come first in top_down order
    std::vector<std::size_t> cdepth(clusters_.count(), 0);
    for (std::size_t c : clusters_.top_down()) {
        std::size_t d = 0;
        bool any = false;
        for (std::size_t b = 0; b < clusters_.count(); ++b) {
            if (!clusters_.below(c, b) || b == c) continue;
            if (!clusters_.members(b).intersects(final_)) continue;
            any = true;
            d = std::max(d, cdepth[b] + 1);
        }
        cdepth[c] = any ? d : 0;
    }
    for (std::size_t w = 0; w < m.size(); ++w) depth_[w] = cdepth[clusters_.cluster_of(w)];
}

bool SigmaView::is_semifinal(std::size_t w) const
{
    WorldSet rest = m_->all();
    rest.subtract(clusters_.members(clusters_.cluster_of(w)));
    return rest.subset_of(final_);
}

std::size_t SigmaView::depth(const WorldSet& a) const
{
    std::size_t d = 0;
    a.for_each([&](std::size_t w) { d = std::max(d, depth_[w]); });
    return d;
}

std::size_t SigmaView::max_depth() const
{
    std::size_t d = 0;
    for (auto x : depth_) d = std::max(d, x);
    return d;
}

WorldSet SigmaView::depth_modality(std::size_t n, std::optional<std::size_t> member) const
{
    WorldSet targets = final_;
    if (member) targets &= truth_[*member];
    WorldSet r = m_->none();
    targets.for_each([&](std::size_t v) {
        if (depth_[v] != n) return;
        r |= m_->pred(v);
        r.set(v);
    });
    return r;
}

std::size_t SigmaView::level(std::size_t w) const
{
    if (final_.test(w) || depth_[w] == 0) return depth_[w];
    return depth_[w] - 1;
}

std::optional<std::string> prune_check(const KripkeModel& m, const SigmaClosure& sigma, const WorldSet& keep)
{
    std::vector<std::size_t> old;
    KripkeModel n = restrict(m, keep, &old);
    ModelChecker full(m), part(n);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        Mu f = sigma.floor(i);
        WorldSet a = full.eval(f), b = part.eval(f);
        for (std::size_t k = 0; k < old.size(); ++k)
            if (a.test(old[k]) != b.test(k))
                return "member " + to_string(sigma[i]) + " differs at world " + m.label(old[k]);
    }
    return std::nullopt;
}

} // namespace tangle
