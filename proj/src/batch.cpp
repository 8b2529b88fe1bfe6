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

#include "tangle/batch.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tangle/checker.hpp"

namespace tangle {

CompiledTangle::CompiledTangle(const std::vector<Tangle>& roots)
{
    std::unordered_map<Tangle, std::uint32_t, TangleHash> index;
    std::unordered_map<std::string, std::uint32_t> prop_index;
    for (Tangle root : roots) {
        std::vector<std::pair<Tangle, bool>> stack{{root, false}};
        while (!stack.empty()) {
            auto [f, ready] = stack.back();
            stack.pop_back();
            if (index.count(f)) continue;
            if (!ready) {
                stack.push_back({f, true});
                for (Tangle c : f.children())
                    if (!index.count(c)) stack.push_back({c, false});
                continue;
            }
            const auto id = static_cast<std::uint32_t>(kinds_.size());
            kinds_.push_back(f.kind());
            if (f.kind() == TangleKind::Prop) {
                auto [it, fresh] = prop_index.emplace(f.name(), static_cast<std::uint32_t>(props_.size()));
                if (fresh) props_.push_back(f.name());
                arg_.push_back(it->second);
                arity_.push_back(0);
            } else {
                arg_.push_back(static_cast<std::uint32_t>(kids_.size()));
                arity_.push_back(static_cast<std::uint32_t>(f.children().size()));
                for (Tangle c : f.children()) kids_.push_back(index.at(c));
            }
            index.emplace(f, id);
        }
        roots_.push_back(index.at(root));
    }
}

std::vector<std::uint64_t> CompiledTangle::eval(const KripkeModel& m) const
{
    std::vector<std::uint64_t> scratch;
    return eval(m, scratch);
}

std::vector<std::uint64_t> CompiledTangle::eval(const KripkeModel& m, std::vector<std::uint64_t>& val) const
{
    const std::size_t n = m.size();
    if (n > max_worlds) throw ModelError("compiled evaluation needs at most 64 worlds");
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> succ(n);
    for (std::size_t w = 0; w < n; ++w) succ[w] = to_mask(m.succ(w));
    std::vector<std::uint64_t> prop(props_.size());
    for (std::size_t i = 0; i < props_.size(); ++i) prop[i] = to_mask(m.prop(props_[i]));

    auto dia = [&](std::uint64_t s) {
        std::uint64_t r = 0;
        for (std::size_t w = 0; w < n; ++w)
            if (succ[w] & s) r |= std::uint64_t{1} << w;
        return r;
    };

    val.assign(kinds_.size(), 0);
    std::vector<std::uint64_t> members, dias;
    for (std::size_t i = 0; i < kinds_.size(); ++i) {
        const std::uint32_t* k = kids_.data() + arg_[i];
        switch (kinds_[i]) {
        case TangleKind::Top: val[i] = all; break;
        case TangleKind::Bot: val[i] = 0; break;
        case TangleKind::Prop: val[i] = prop[arg_[i]]; break;
        case TangleKind::Not: val[i] = ~val[k[0]] & all; break;
        case TangleKind::And: val[i] = val[k[0]] & val[k[1]]; break;
        case TangleKind::Or: val[i] = val[k[0]] | val[k[1]]; break;
        case TangleKind::Diamond: val[i] = dia(val[k[0]]); break;
        case TangleKind::Box: val[i] = ~dia(~val[k[0]] & all) & all; break;
        case TangleKind::TangleInf: {
            // same iteration as ModelChecker::tangle
            const std::size_t a = arity_[i];
            members.assign(k, k + a);
            for (auto& x : members) x = val[x];
            dias.resize(a);
            std::uint64_t x = all;
            for (;;) {
                for (std::size_t j = 0; j < a; ++j) dias[j] = dia(members[j] & x);
                std::uint64_t next = 0;
                for (std::size_t j = 0; j < a; ++j) {
                    std::uint64_t part = (members[j] & x) | dias[j];
                    for (std::size_t l = 0; l < a; ++l)
                        if (l != j) part &= dias[l];
                    next |= part;
                }
                if (next == x) break;
                x = next;
            }
            val[i] = x;
            break;
        }
        }
    }
    std::vector<std::uint64_t> out;
    out.reserve(roots_.size());
    for (auto r : roots_) out.push_back(val[r]);
    return out;
}

std::uint64_t to_mask(const WorldSet& s)
{
    std::uint64_t r = 0;
    s.for_each([&](std::size_t w) { r |= std::uint64_t{1} << w; });
    return r;
}

WorldSet from_mask(std::uint64_t mask, std::size_t universe)
{
    WorldSet s(universe);
    while (mask) {
        s.set(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return s;
}

std::vector<std::vector<WorldSet>> batch_eval(const std::vector<Tangle>& roots,
                                              const std::vector<KripkeModel>& models)
{
    const CompiledTangle compiled(roots);
    std::vector<std::vector<WorldSet>> out(models.size());
    const auto count = static_cast<std::int64_t>(models.size());
#pragma omp parallel
    {
        std::vector<std::uint64_t> scratch;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t k = 0; k < count; ++k) {
            const KripkeModel& m = models[static_cast<std::size_t>(k)];
            auto& row = out[static_cast<std::size_t>(k)];
            if (m.size() <= CompiledTangle::max_worlds) {
                for (auto mask : compiled.eval(m, scratch)) row.push_back(from_mask(mask, m.size()));
            } else {
                ModelChecker mc(m);
                for (Tangle r : roots) row.push_back(mc.eval(r));
            }
        }
    }
    return out;
}

std::vector<std::vector<WorldSet>> batch_eval_serial(const std::vector<Tangle>& roots,
                                                     const std::vector<KripkeModel>& models)
{
    std::vector<std::vector<WorldSet>> out;
    out.reserve(models.size());
    for (const auto& m : models) {
        ModelChecker mc(m);
        auto& row = out.emplace_back();
        for (Tangle r : roots) row.push_back(mc.eval(r));
    }
    return out;
}

std::vector<WorldSet> batch_eval(Mu f, const std::vector<KripkeModel>& models)
{
    std::vector<WorldSet> out(models.size());
    const auto count = static_cast<std::int64_t>(models.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t k = 0; k < count; ++k)
        out[static_cast<std::size_t>(k)] = eval(models[static_cast<std::size_t>(k)], f);
    return out;
}

std::vector<WorldSet> batch_eval_serial(Mu f, const std::vector<KripkeModel>& models)
{
    std::vector<WorldSet> out;
    out.reserve(models.size());
    for (const auto& m : models) out.push_back(eval(m, f));
    return out;
}

std::vector<std::size_t> batch_disagreements(Mu a, Tangle b, const std::vector<KripkeModel>& models)
{
    const auto lhs = batch_eval(a, models);
    const auto rhs = batch_eval(std::vector<Tangle>{b}, models);
    std::vector<std::size_t> bad;
    for (std::size_t k = 0; k < models.size(); ++k)
        if (!(lhs[k] == rhs[k][0])) bad.push_back(k);
    return bad;
}

int batch_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace tangle
