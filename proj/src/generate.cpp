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

#include "tangle/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace tangle {

namespace {

using Perm = std::vector<std::size_t>;

std::vector<Perm> permutations(std::size_t n)
{
    std::vector<Perm> out;
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// adjacency bit u*n+v
std::uint32_t permute_frame(std::uint32_t mask, const Perm& p, std::size_t n)
{
    std::uint32_t r = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (mask >> (u * n + v) & 1u) r |= 1u << (p[u] * n + p[v]);
    return r;
}

bool frame_wk4(std::uint32_t mask, std::size_t n)
{
    auto e = [&](std::size_t u, std::size_t v) { return (mask >> (u * n + v) & 1u) != 0; };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (e(a, b))
                for (std::size_t c = 0; c < n; ++c)
                    if (e(b, c) && a != c && !e(a, c)) return false;
    return true;
}

struct Frame {
    std::uint32_t mask;
    std::vector<Perm> automorphisms;
};

std::vector<Frame> canonical_frames(std::size_t n)
{
    if (n > max_enumerated_worlds)
        throw ModelError("exhaustive enumeration limited to " + std::to_string(max_enumerated_worlds) + " worlds");
    const auto perms = permutations(n);
    std::vector<Frame> out;
    const std::uint64_t limit = std::uint64_t{1} << (n * n);
    for (std::uint64_t m = 0; m < limit; ++m) {
        const auto mask = static_cast<std::uint32_t>(m);
        if (!frame_wk4(mask, n)) continue;
        bool minimal = true;
        std::vector<Perm> autos;
        for (const auto& p : perms) {
            std::uint32_t q = permute_frame(mask, p, n);
            if (q < mask) {
                minimal = false;
                break;
            }
            if (q == mask) autos.push_back(p);
        }
        if (minimal) out.push_back({mask, std::move(autos)});
    }
    return out;
}

KripkeModel frame_model(std::uint32_t mask, std::size_t n)
{
    KripkeModel m(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (mask >> (u * n + v) & 1u) m.add_edge(u, v);
    return m;
}

} // namespace

std::vector<KripkeModel> wk4_frames(std::size_t n)
{
    std::vector<KripkeModel> out;
    for (const auto& f : canonical_frames(n)) out.push_back(frame_model(f.mask, n));
    return out;
}

void for_each_model(const std::vector<std::string>& props, std::size_t max_worlds,
                    const std::function<void(const KripkeModel&)>& visit)
{
    if (max_worlds > max_enumerated_worlds)
        throw ModelError("exhaustive enumeration limited to " + std::to_string(max_enumerated_worlds) + " worlds");
    const std::size_t k = props.size();
    if (k > 4) throw ModelError("exhaustive enumeration limited to 4 propositions");
    const std::uint64_t per_world = std::uint64_t{1} << k;
    for (std::size_t n = 1; n <= max_worlds; ++n) {
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < n; ++i) combos *= per_world;
        for (const auto& f : canonical_frames(n)) {
            const KripkeModel frame = frame_model(f.mask, n);
            std::vector<std::uint64_t> digits(n), moved(n);
            for (std::uint64_t code = 0; code < combos; ++code) {
                std::uint64_t c = code;
                for (std::size_t w = 0; w < n; ++w, c /= per_world) digits[w] = c % per_world;
                // keep the smallest code in the automorphism orbit
                bool minimal = true;
                for (const auto& p : f.automorphisms) {
                    for (std::size_t w = 0; w < n; ++w) moved[p[w]] = digits[w];
                    std::uint64_t q = 0;
                    for (std::size_t w = n; w-- > 0;) q = q * per_world + moved[w];
                    if (q < code) {
                        minimal = false;
                        break;
                    }
                }
                if (!minimal) continue;
                KripkeModel m = frame;
                for (const auto& p : props) m.declare_prop(p);
                for (std::size_t w = 0; w < n; ++w)
                    for (std::size_t i = 0; i < k; ++i)
                        if (digits[w] >> i & 1u) m.set_prop(props[i], w);
                visit(m);
            }
        }
    }
}

std::vector<KripkeModel> enumerate_models(const std::vector<std::string>& props, std::size_t max_worlds)
{
    std::vector<KripkeModel> out;
    for_each_model(props, max_worlds, [&](const KripkeModel& m) { out.push_back(m); });
    return out;
}

KripkeModel random_model(const std::vector<std::string>& props, std::size_t size, std::uint64_t seed)
{
    // raw engine output only: distributions are not portable across libraries
    std::mt19937_64 rng(seed);
    KripkeModel m(size);
    const std::uint64_t density = 1 + rng() % 7; // edge probability density/16
    for (std::size_t u = 0; u < size; ++u)
        for (std::size_t v = 0; v < size; ++v)
            if (rng() % 16 < density) m.add_edge(u, v);
    m.close_weakly_transitive();
    for (const auto& p : props) {
        m.declare_prop(p);
        for (std::size_t w = 0; w < size; ++w)
            if (rng() & 1u) m.set_prop(p, w);
    }
    return m;
}

namespace {

Mu random_formula(std::mt19937_64& rng, const std::vector<std::string>& props, int depth,
                  std::vector<std::string>& scope)
{
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    if (depth <= 0 || pick(5) == 0) {
        std::size_t k = pick(4 + (scope.empty() ? 0 : 2));
        switch (k) {
        case 0: return pick(2) ? Mu::top() : Mu::bot();
        case 1:
        case 2: return Mu::prop(props[pick(props.size())]);
        case 3: return Mu::neg_prop(props[pick(props.size())]);
        default: return Mu::var(scope[pick(scope.size())]);
        }
    }
    switch (pick(6)) {
    case 0: {
        Mu l = random_formula(rng, props, depth - 1, scope);
        return Mu::conj(l, random_formula(rng, props, depth - 1, scope));
    }
    case 1: {
        Mu l = random_formula(rng, props, depth - 1, scope);
        return Mu::disj(l, random_formula(rng, props, depth - 1, scope));
    }
    case 2: return Mu::diamond(random_formula(rng, props, depth - 1, scope));
    case 3: return Mu::box(random_formula(rng, props, depth - 1, scope));
    default: {
        std::string x = "x" + std::to_string(scope.size());
        scope.push_back(x);
        Mu body = random_formula(rng, props, depth - 1, scope);
        scope.pop_back();
        return pick(2) ? Mu::mu(x, body) : Mu::nu(x, body);
    }
    }
}

} // namespace

Mu random_formula(std::mt19937_64& rng, const std::vector<std::string>& props, int depth)
{
    std::vector<std::string> scope;
    return random_formula(rng, props, depth, scope);
}

} // namespace tangle
