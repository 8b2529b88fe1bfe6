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

#include "tangle/parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace tangle {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Mu run()
    {
        Mu f = parse_or();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok)
    {
        skip_ws();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    std::string peek_ident()
    {
        skip_ws();
        std::size_t p = pos_;
        if (p >= s_.size() || !ident_start(s_[p])) return {};
        while (p < s_.size() && ident_char(s_[p])) ++p;
        return std::string(s_.substr(pos_, p - pos_));
    }

    std::string ident()
    {
        std::string id = peek_ident();
        if (id.empty()) fail("expected identifier");
        if (id == "mu" || id == "nu" || id == "T" || id == "F") fail("reserved word '" + id + "'");
        pos_ += id.size();
        return id;
    }

    Mu parse_or()
    {
        Mu f = parse_and();
        while (accept("|")) f = Mu::disj(f, parse_and());
        return f;
    }

    Mu parse_and()
    {
        Mu f = parse_unary();
        while (accept("&")) f = Mu::conj(f, parse_unary());
        return f;
    }

    Mu parse_unary()
    {
        skip_ws();
        const std::size_t start = pos_;
        if (accept("~")) {
            Mu g = parse_unary();
            try {
                return negate(g);
            } catch (const FormulaError&) {
                pos_ = start;
                fail("negative occurrence of a bound variable");
            }
        }
        if (accept("<>")) return Mu::diamond(parse_unary());
        if (accept("[]")) return Mu::box(parse_unary());
        if (accept("<.>")) return Mu::dot_diamond(parse_unary());
        if (accept("[.]")) return Mu::dot_box(parse_unary());
        if (accept("<inf>")) {
            expect("{");
            std::vector<Mu> gamma{parse_or()};
            while (accept(",")) gamma.push_back(parse_or());
            expect("}");
            return expand_tangle(gamma);
        }
        if (accept("(")) {
            Mu f = parse_or();
            expect(")");
            return f;
        }
        std::string id = peek_ident();
        if (id == "mu" || id == "nu") {
            pos_ += 2;
            std::string var = ident();
            expect(".");
            scope_.push_back(var);
            Mu body = parse_or();
            scope_.pop_back();
            return id == "mu" ? Mu::mu(var, body) : Mu::nu(var, body);
        }
        if (id == "T") {
            pos_ += 1;
            return Mu::top();
        }
        if (id == "F") {
            pos_ += 1;
            return Mu::bot();
        }
        if (id.empty()) {
            if (pos_ >= s_.size()) fail("unexpected end of input");
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        std::string name = ident();
        if (std::find(scope_.begin(), scope_.end(), name) != scope_.end()) return Mu::var(name);
        return Mu::prop(name);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::vector<std::string> scope_;
};

} // namespace

Mu parse_mu(std::string_view text) { return Parser(text).run(); }

} // namespace tangle
