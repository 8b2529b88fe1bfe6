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

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace tangle {

/// Fixed-universe bitset over the worlds of one model. Models up to 64
/// worlds stay in inline storage.
class WorldSet {
public:
    WorldSet() = default;
    explicit WorldSet(std::size_t universe, bool full = false)
        : size_(universe), words_((universe + 63) / 64, full ? ~std::uint64_t{0} : 0)
    {
        trim();
    }

    static WorldSet singleton(std::size_t universe, std::size_t w)
    {
        WorldSet s(universe);
        s.set(w);
        return s;
    }

    std::size_t universe() const { return size_; }

    bool test(std::size_t w) const { return (words_[w >> 6] >> (w & 63)) & 1u; }
    void set(std::size_t w) { words_[w >> 6] |= std::uint64_t{1} << (w & 63); }
    void reset(std::size_t w) { words_[w >> 6] &= ~(std::uint64_t{1} << (w & 63)); }
    void assign(std::size_t w, bool v) { v ? set(w) : reset(w); }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto x : words_) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }
    bool empty() const
    {
        for (auto x : words_)
            if (x) return false;
        return true;
    }
    bool full() const { return count() == size_; }

    bool intersects(const WorldSet& o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool subset_of(const WorldSet& o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    WorldSet& operator&=(const WorldSet& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    WorldSet& operator|=(const WorldSet& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    WorldSet& subtract(const WorldSet& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    /// Grow or shrink the universe; members beyond the new size are dropped.
    void resize(std::size_t universe)
    {
        size_ = universe;
        words_.resize((universe + 63) / 64, 0);
        trim();
    }
    /// Smallest member, or universe() when empty.
    std::size_t first() const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
        return size_;
    }

    WorldSet complement() const
    {
        WorldSet r = *this;
        for (auto& x : r.words_) x = ~x;
        r.trim();
        return r;
    }

    friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
    friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
    friend bool operator==(const WorldSet& a, const WorldSet& b)
    {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t x = words_[i];
            while (x) {
                int b = std::countr_zero(x);
                f(i * 64 + static_cast<std::size_t>(b));
                x &= x - 1;
            }
        }
    }

    std::vector<std::size_t> members() const
    {
        std::vector<std::size_t> out;
        for_each([&](std::size_t w) { out.push_back(w); });
        return out;
    }

    std::size_t hash() const
    {
        std::size_t h = size_;
        for (auto x : words_) h = h * 1000003u ^ std::hash<std::uint64_t>{}(x);
        return h;
    }

private:
    void trim()
    {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    boost::container::small_vector<std::uint64_t, 1> words_;
};

} // namespace tangle
