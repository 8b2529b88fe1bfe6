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

#include "tangle/canonical_cluster.hpp"

#include <algorithm>

namespace tangle {

CanonicalCluster::CanonicalCluster(std::vector<std::string> props, std::vector<Multiplicity> classes)
    : props_(std::move(props)), classes_(std::move(classes))
{
    if (props_.size() > 16) throw ModelError("too many propositions for a canonical cluster");
    if (classes_.size() != (std::size_t{1} << props_.size()))
        throw ModelError("canonical cluster needs one class per valuation");
}

std::uint32_t valuation_of(const KripkeModel& m, std::size_t w, const std::vector<std::string>& props)
{
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < props.size(); ++i)
        if (m.holds(props[i], w)) v |= 1u << i;
    return v;
}

CanonicalCluster CanonicalCluster::of(const KripkeModel& m, const WorldSet& members,
                                      const std::vector<std::string>& props)
{
    std::vector<std::uint32_t> count(std::size_t{1} << props.size(), 0);
    std::vector<bool> refl(count.size(), false);
    members.for_each([&](std::size_t w) {
        std::uint32_t v = valuation_of(m, w, props);
        ++count[v];
        if (m.reflexive(w)) refl[v] = true;
    });
    std::vector<Multiplicity> classes(count.size(), Multiplicity::Absent);
    for (std::size_t v = 0; v < count.size(); ++v) {
        if (count[v] == 0) continue;
        classes[v] = count[v] == 1 && !refl[v] ? Multiplicity::One : Multiplicity::Saturated;
    }
    return CanonicalCluster(props, std::move(classes));
}

std::vector<CanonicalCluster> CanonicalCluster::enumerate(const std::vector<std::string>& props,
                                                          std::size_t cap)
{
    const std::size_t slots = std::size_t{1} << std::min<std::size_t>(props.size(), 16);
    // 3^slots - 1 with overflow guard
    std::size_t total = 1;
    for (std::size_t i = 0; i < slots; ++i) {
        total *= 3;
        if (total > cap + 1) throw ModelError("canonical cluster count exceeds cap");
    }
    std::vector<CanonicalCluster> out;
    out.reserve(total - 1);
    std::vector<Multiplicity> classes(slots, Multiplicity::Absent);
    for (std::size_t code = 1; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < slots; ++i, c /= 3) classes[i] = static_cast<Multiplicity>(c % 3);
        out.emplace_back(props, classes);
    }
    return out;
}

std::vector<std::uint32_t> CanonicalCluster::support() const
{
    std::vector<std::uint32_t> s;
    for (std::uint32_t v = 0; v < classes_.size(); ++v)
        if (classes_[v] != Multiplicity::Absent) s.push_back(v);
    return s;
}

std::size_t CanonicalCluster::realized_size() const
{
    std::size_t n = 0;
    for (auto c : classes_) n += c == Multiplicity::One ? 1 : c == Multiplicity::Saturated ? 2 : 0;
    return n;
}

KripkeModel CanonicalCluster::realize() const
{
    KripkeModel m;
    for (const auto& p : props_) m.declare_prop(p);
    for (std::uint32_t v = 0; v < classes_.size(); ++v) {
        const int copies = classes_[v] == Multiplicity::One ? 1 : classes_[v] == Multiplicity::Saturated ? 2 : 0;
        for (int k = 0; k < copies; ++k) {
            std::size_t w = m.add_world("c" + std::to_string(v) + (k ? "b" : "a"));
            for (std::size_t i = 0; i < props_.size(); ++i)
                if (v >> i & 1u) m.set_prop(props_[i], w);
        }
    }
    for (std::size_t u = 0; u < m.size(); ++u)
        for (std::size_t w = 0; w < m.size(); ++w)
            if (u != w) m.add_edge(u, w);
    return m;
}

bool CanonicalCluster::embeds_le(const CanonicalCluster& o) const
{
    if (props_ != o.props_) return false;
    for (std::size_t v = 0; v < classes_.size(); ++v)
        if (static_cast<int>(classes_[v]) > static_cast<int>(o.classes_[v])) return false;
    return true;
}

std::string CanonicalCluster::to_string() const
{
    std::string s = "{";
    bool first = true;
    for (std::uint32_t v = 0; v < classes_.size(); ++v) {
        if (classes_[v] == Multiplicity::Absent) continue;
        if (!first) s += ", ";
        first = false;
        std::string val;
        for (std::size_t i = 0; i < props_.size(); ++i)
            if (v >> i & 1u) val += (val.empty() ? "" : ",") + props_[i];
        s += "[" + val + "]" + (classes_[v] == Multiplicity::One ? "1" : "*");
    }
    return s + "}";
}

std::size_t CanonicalCluster::hash() const
{
    std::size_t h = props_.size();
    for (auto c : classes_) h = h * 3 + static_cast<std::size_t>(c);
    return h;
}

} // namespace tangle
