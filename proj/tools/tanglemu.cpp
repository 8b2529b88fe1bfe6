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

// tanglemu: command-line front end.
//
// Exit status: 0 success, 1 the checked property failed (a counterexample is
// printed), 2 bad usage, unreadable input or an exceeded resource guard.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tangle/batch.hpp"
#include "tangle/checker.hpp"
#include "tangle/closure.hpp"
#include "tangle/finality.hpp"
#include "tangle/generate.hpp"
#include "tangle/kripke.hpp"
#include "tangle/model_io.hpp"
#include "tangle/parser.hpp"
#include "tangle/tangle_formula.hpp"
#include "tangle/translator.hpp"

using namespace tangle;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

struct Options {
    std::string format = "human";
    std::string model_path;
    std::vector<std::string> fuzz_models;
    std::string formula;
    std::string formula_b;
    bool chi = false;
    bool direct = false;
    bool corrupt_or = false;
    std::size_t models = 1000;
    std::size_t size = 6;
    std::size_t exhaustive = 0;
    std::uint64_t seed = 1;
    std::string prop_list;
    std::size_t max_depth = TranslatorLimits{}.max_depth;
    std::size_t max_props = TranslatorLimits{}.max_props;
    std::size_t max_sigma = TranslatorLimits{}.max_sigma;
    std::size_t verify_worlds = 0;
    bool no_report = false;
};

bool json_out(const Options& o) { return o.format == "json"; }

std::string labels(const KripkeModel& m, const WorldSet& s)
{
    std::string out;
    for (std::size_t w = 0; w < m.size(); ++w) {
        if (!s.test(w)) continue;
        if (!out.empty()) out += ' ';
        out += m.label(w);
    }
    return out;
}

json label_list(const KripkeModel& m, const WorldSet& s)
{
    json a = json::array();
    for (std::size_t w = 0; w < m.size(); ++w)
        if (s.test(w)) a.push_back(m.label(w));
    return a;
}

std::vector<std::string> split_props(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Members of a top-level "<inf>{a, b, ...}" text.
std::vector<Mu> tangle_members(const std::string& text)
{
    auto start = text.find_first_not_of(" \t");
    if (start == std::string::npos || text.compare(start, 5, "<inf>") != 0)
        throw FormulaError("--direct needs a formula of the form <inf>{...}");
    auto open = text.find('{', start);
    auto close = text.find_last_of('}');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        text.find_first_not_of(" \t", close + 1) != std::string::npos)
        throw FormulaError("--direct needs a formula of the form <inf>{...}");
    std::vector<Mu> out;
    int level = 0;
    std::size_t from = open + 1;
    for (std::size_t i = open + 1; i <= close; ++i) {
        char c = text[i];
        if (c == '(' || c == '{') ++level;
        if ((c == ')' || c == '}') && i != close) --level;
        if ((c == ',' && level == 0) || i == close) {
            out.push_back(parse_mu(text.substr(from, i - from)));
            from = i + 1;
        }
    }
    return out;
}

// The tangle expansion with its inner conjunction read as a disjunction:
// nu z. OR_i ( <.>(g_i & z) | AND_{j != i} <>(g_j & z) ). Kept only to show
// the harness catching a wrong expansion.
Mu corrupt_or_expansion(const std::vector<Mu>& gamma)
{
    std::set<std::string> taken;
    for (Mu g : gamma) {
        for (const auto& p : props(g)) taken.insert(p);
        for (const auto& v : g.free_vars()) taken.insert(v);
    }
    std::string z = "z";
    for (int k = 0; taken.count(z); ++k) z = "z" + std::to_string(k);
    Mu x = Mu::var(z);
    std::vector<Mu> disjuncts;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        std::vector<Mu> others;
        for (std::size_t j = 0; j < gamma.size(); ++j)
            if (j != i) others.push_back(Mu::diamond(Mu::conj(gamma[j], x)));
        Mu self = Mu::dot_diamond(Mu::conj(gamma[i], x));
        disjuncts.push_back(others.empty() ? self : Mu::disj(self, Mu::conj_all(others)));
    }
    return Mu::nu(z, Mu::disj_all(disjuncts));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// The given model files, else every model up to o.exhaustive worlds, else
// o.models random ones of 1..o.size worlds, each from its own seed.
std::vector<KripkeModel> model_pool(const Options& o, const std::vector<std::string>& props)
{
    if (!o.fuzz_models.empty()) {
        std::vector<KripkeModel> pool;
        for (const auto& path : o.fuzz_models) pool.push_back(load_model(path));
        return pool;
    }
    if (o.exhaustive > 0) return enumerate_models(props, o.exhaustive);
    std::vector<KripkeModel> pool;
    pool.reserve(o.models);
    for (std::size_t k = 0; k < o.models; ++k) {
        std::uint64_t s = mix_seed(o.seed, k);
        pool.push_back(random_model(props, 1 + s % o.size, s));
    }
    return pool;
}

// Smallest index whose two truth sets differ, searched in parallel.
std::optional<std::size_t> first_disagreement(const std::vector<KripkeModel>& pool,
                                              const std::function<WorldSet(const KripkeModel&)>& a,
                                              const std::function<WorldSet(const KripkeModel&)>& b)
{
    const long n = static_cast<long>(pool.size());
    long best = n;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (long k = 0; k < n; ++k)
        if (k < best && a(pool[k]) != b(pool[k])) best = std::min(best, k);
    if (best == n) return std::nullopt;
    return static_cast<std::size_t>(best);
}

int report_counterexample(const Options& o, const KripkeModel& m, const WorldSet& a, const WorldSet& b)
{
    std::size_t w = 0;
    while (w < m.size() && a.test(w) == b.test(w)) ++w;
    if (json_out(o)) {
        json j = {{"verdict", "fail"},
                  {"model", model_to_json(m)},
                  {"world", m.label(w)},
                  {"left", a.test(w)},
                  {"right", b.test(w)}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "FAIL\n";
        std::cout << "model " << model_to_json(m).dump() << '\n';
        std::cout << "world " << m.label(w) << ": left " << (a.test(w) ? "true" : "false") << ", right "
                  << (b.test(w) ? "true" : "false") << '\n';
    }
    return exit_violation;
}

int report_pass(const Options& o, std::size_t n)
{
    if (json_out(o))
        std::cout << json{{"verdict", "pass"}, {"models", n}}.dump() << '\n';
    else
        std::cout << "PASS " << n << " models\n";
    return exit_ok;
}

TranslatorLimits limits_of(const Options& o)
{
    TranslatorLimits l;
    l.max_depth = o.max_depth;
    l.max_props = o.max_props;
    l.max_sigma = o.max_sigma;
    return l;
}

std::vector<std::string> props_or_default(std::vector<std::string> props)
{
    if (props.empty()) props.push_back("p");
    return props;
}

int cmd_check(const Options& o)
{
    KripkeModel m = load_model(o.model_path);
    WorldSet s = eval(m, parse_mu(o.formula));
    if (json_out(o))
        std::cout << json{{"worlds", label_list(m, s)}}.dump() << '\n';
    else
        std::cout << labels(m, s) << '\n';
    return exit_ok;
}

int cmd_translate(const Options& o)
{
    Mu phi = parse_mu(o.formula);
    Translator t(phi, limits_of(o));
    Tangle chi = t.chi();
    TranslationReport r = t.report();

    json depths = json::array();
    for (const auto& d : r.depths)
        depths.push_back({{"depth", d.depth},
                          {"final_pairs", d.final_pairs},
                          {"semi_pairs", d.semi_pairs},
                          {"chains", d.chains},
                          {"semi_chains", d.semi_chains}});
    json rep = {{"formula", r.formula},
                {"size", r.formula_size},
                {"sigma", r.sigma_size},
                {"props", r.props},
                {"depths", depths},
                {"eval_final", r.eval_final},
                {"eval_semi", r.eval_semi},
                {"eval_conflicts", r.eval_conflicts},
                {"dag_nodes", r.dag_nodes},
                {"tree_size", r.tree_size.str()},
                {"log2_tree_size", r.log2_tree_size},
                {"log2_bound", r.bound_exponent.str()},
                {"within_bound", r.within_bound}};

    int status = exit_ok;
    std::optional<std::string> failure;
    if (o.verify_worlds > 0) {
        auto pool = enumerate_models(props_or_default(t.props()), o.verify_worlds);
        auto bad = batch_disagreements(phi, chi, pool);
        rep["verified_models"] = pool.size();
        rep["verified_mismatches"] = bad.size();
        if (!bad.empty()) {
            status = exit_violation;
            const KripkeModel& m = pool[bad.front()];
            WorldSet a = eval(m, phi), b = eval(m, chi);
            std::size_t w = 0;
            while (a.test(w) == b.test(w)) ++w;
            rep["counterexample"] = {{"model", model_to_json(m)}, {"world", m.label(w)}};
            failure = model_to_json(m).dump() + " at " + m.label(w);
        }
    }
    if (r.eval_conflicts != 0 || !r.within_bound) status = exit_violation;

    if (json_out(o)) {
        std::cout << json{{"chi", to_dag_string(chi)}, {"report", rep}}.dump() << '\n';
        return status;
    }
    std::cout << to_dag_string(chi) << '\n';
    if (o.no_report) return status;
    std::cout << "\n% formula " << r.formula << '\n';
    std::cout << "% size " << r.formula_size << ", sigma " << r.sigma_size << ", props " << r.props << '\n';
    for (const auto& d : r.depths)
        std::cout << "% depth " << d.depth << ": " << d.final_pairs << " final pairs, " << d.semi_pairs
                  << " semi pairs, " << d.chains << " chains, " << d.semi_chains << " semi chains\n";
    std::cout << "% eval " << r.eval_final << " final, " << r.eval_semi << " semi, " << r.eval_conflicts
              << " conflicts\n";
    std::cout << "% dag nodes " << r.dag_nodes << ", tree size " << r.tree_size << '\n';
    std::cout << "% log2 tree size " << r.log2_tree_size << " <= " << r.bound_exponent << ": "
              << (r.within_bound ? "yes" : "NO") << '\n';
    if (o.verify_worlds > 0) {
        std::cout << "% verified on " << rep["verified_models"].get<std::size_t>() << " models, "
                  << rep["verified_mismatches"].get<std::size_t>() << " mismatches\n";
        if (failure) std::cout << "% counterexample " << *failure << '\n';
    }
    return status;
}

int cmd_fuzz(const Options& o)
{
    if (o.exhaustive > max_enumerated_worlds)
        throw ModelError("--exhaustive is limited to " + std::to_string(max_enumerated_worlds) + " worlds");
    int modes = (o.chi ? 1 : 0) + (o.direct ? 1 : 0) + (o.formula_b.empty() ? 0 : 1);
    if (modes != 1) throw FormulaError("give exactly one of: a second formula, --chi, --direct");
    if (o.corrupt_or && !o.direct) throw FormulaError("--corrupt-or only applies to --direct");

    std::set<std::string> atoms;
    auto collect = [&](Mu f) {
        for (const auto& p : props(f)) atoms.insert(p);
    };

    if (o.direct) {
        auto gamma = tangle_members(o.formula);
        for (Mu g : gamma) collect(g);
        for (const auto& p : split_props(o.prop_list)) atoms.insert(p);
        Mu expansion = o.corrupt_or ? corrupt_or_expansion(gamma) : expand_tangle(gamma);
        auto pool = model_pool(o, props_or_default({atoms.begin(), atoms.end()}));
        auto lhs = [&](const KripkeModel& m) { return eval(m, expansion); };
        auto rhs = [&](const KripkeModel& m) { return eval_tangle_direct(m, gamma); };
        if (auto k = first_disagreement(pool, lhs, rhs))
            return report_counterexample(o, pool[*k], lhs(pool[*k]), rhs(pool[*k]));
        return report_pass(o, pool.size());
    }

    Mu a = parse_mu(o.formula);
    collect(a);
    if (o.chi) {
        Translator t(a, limits_of(o));
        Tangle chi = t.chi();
        for (const auto& p : split_props(o.prop_list)) atoms.insert(p);
        auto pool = model_pool(o, props_or_default({atoms.begin(), atoms.end()}));
        auto bad = batch_disagreements(a, chi, pool);
        if (!bad.empty()) {
            const KripkeModel& m = pool[bad.front()];
            return report_counterexample(o, m, eval(m, a), eval(m, chi));
        }
        return report_pass(o, pool.size());
    }

    Mu b = parse_mu(o.formula_b);
    collect(b);
    for (const auto& p : split_props(o.prop_list)) atoms.insert(p);
    auto pool = model_pool(o, props_or_default({atoms.begin(), atoms.end()}));
    auto lhs = [&](const KripkeModel& m) { return eval(m, a); };
    auto rhs = [&](const KripkeModel& m) { return eval(m, b); };
    if (auto k = first_disagreement(pool, lhs, rhs))
        return report_counterexample(o, pool[*k], lhs(pool[*k]), rhs(pool[*k]));
    return report_pass(o, pool.size());
}

int cmd_final_part(const Options& o)
{
    KripkeModel m = load_model(o.model_path);
    SigmaClosure sigma(parse_mu(o.formula), o.max_sigma);
    SigmaView view(m, sigma);
    if (json_out(o)) {
        json worlds = json::array();
        for (std::size_t w = 0; w < m.size(); ++w)
            worlds.push_back({{"world", m.label(w)},
                              {"final", view.is_final(w)},
                              {"depth", view.depth(w)},
                              {"level", view.level(w)}});
        std::cout << json{{"final", label_list(m, view.final_part())}, {"sigma", sigma.size()}, {"worlds", worlds}}
                         .dump()
                  << '\n';
        return exit_ok;
    }
    std::cout << labels(m, view.final_part()) << '\n';
    for (std::size_t w = 0; w < m.size(); ++w)
        std::cout << "% " << m.label(w) << (view.is_final(w) ? " final" : " non-final") << ", depth "
                  << view.depth(w) << ", level " << view.level(w) << '\n';
    return exit_ok;
}

int cmd_clusters(const Options& o)
{
    KripkeModel m = load_model(o.model_path);
    ClusterStructure cs(m);
    // clusters in order of their first world
    std::vector<std::size_t> order(cs.count());
    for (std::size_t c = 0; c < cs.count(); ++c) order[c] = c;
    auto first = [&](std::size_t c) {
        std::size_t w = 0;
        while (!cs.members(c).test(w)) ++w;
        return w;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return first(a) < first(b); });

    json out = json::array();
    for (std::size_t c : order) {
        if (json_out(o)) {
            out.push_back({{"worlds", label_list(m, cs.members(c))}, {"depth", cs.depth(c)}});
            continue;
        }
        std::string text = labels(m, cs.members(c));
        std::replace(text.begin(), text.end(), ' ', ',');
        std::cout << '{' << text << "}\n";
    }
    if (json_out(o)) std::cout << json{{"clusters", out}}.dump() << '\n';
    return exit_ok;
}

int cmd_stats(const Options& o)
{
    Mu phi = parse_mu(o.formula);
    SigmaClosure sigma(phi, o.max_sigma);
    std::uint64_t n = size(phi);
    auto bound = size_bound_exponent(n);
    if (json_out(o)) {
        std::cout << json{{"size", n},
                          {"sigma", sigma.size()},
                          {"sigma_bound", 14 * n},
                          {"props", sigma.atoms().size()},
                          {"log2_bound", bound.str()}}
                         .dump()
                  << '\n';
        return exit_ok;
    }
    std::cout << "size " << n << '\n';
    std::cout << "sigma " << sigma.size() << " (14n = " << 14 * n << ")\n";
    std::cout << "props " << sigma.atoms().size() << '\n';
    std::cout << "log2 bound " << bound << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"tanglemu: mu-calculus and tangle logic on finite wK4 models"};
    app.require_subcommand(1);
    app.add_option("--format", o.format, "human or json")
        ->check(CLI::IsMember({"human", "json"}))
        ->capture_default_str();

    auto* check = app.add_subcommand("check", "worlds of MODEL satisfying FORMULA");
    check->add_option("model", o.model_path, "model file (JSON)")->required();
    check->add_option("formula", o.formula)->required();

    auto* translate = app.add_subcommand("translate", "characteristic tangle formula of FORMULA");
    translate->add_option("formula", o.formula)->required();
    translate->add_option("--max-depth", o.max_depth, "depth guard")->check(CLI::PositiveNumber)->capture_default_str();
    translate->add_option("--props", o.max_props, "largest number of propositions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    translate->add_option("--max-sigma", o.max_sigma, "closure size guard")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    translate->add_option("--verify-worlds", o.verify_worlds, "check against FORMULA on all models up to this size")
        ->check(CLI::Range(std::size_t{1}, max_enumerated_worlds));
    translate->add_flag("--no-report", o.no_report, "print the formula only");

    auto* fuzz = app.add_subcommand("fuzz-equiv", "compare two formulas on many models");
    fuzz->add_option("formula", o.formula)->required();
    fuzz->add_option("other", o.formula_b, "second formula");
    fuzz->add_flag("--chi", o.chi, "compare FORMULA with its characteristic tangle formula");
    fuzz->add_flag("--direct", o.direct, "compare the fixed point of <inf>{...} with its cluster reading");
    fuzz->add_flag("--corrupt-or", o.corrupt_or, "with --direct, use an expansion with | for & (must fail)");
    fuzz->add_option("--models", o.models, "random models")->check(CLI::PositiveNumber)->capture_default_str();
    fuzz->add_option("--size", o.size, "largest random model")->check(CLI::PositiveNumber)->capture_default_str();
    fuzz->add_option("--seed", o.seed)->capture_default_str();
    fuzz->add_option("--exhaustive", o.exhaustive, "all models up to this many worlds instead");
    fuzz->add_option("--model", o.fuzz_models, "check these model files only");
    fuzz->add_option("--props", o.prop_list, "extra propositions, comma separated");
    fuzz->add_option("--max-depth", o.max_depth)->check(CLI::PositiveNumber);
    fuzz->add_option("--max-sigma", o.max_sigma)->check(CLI::PositiveNumber);

    auto* final_part = app.add_subcommand("final-part", "final worlds of MODEL for the closure of FORMULA");
    final_part->add_option("model", o.model_path)->required();
    final_part->add_option("formula", o.formula)->required();

    auto* clusters = app.add_subcommand("clusters", "maximal clusters of MODEL");
    clusters->add_option("model", o.model_path)->required();

    auto* stats = app.add_subcommand("stats", "size, closure size and size bound of FORMULA");
    stats->add_option("formula", o.formula)->required();
    stats->add_option("--max-sigma", o.max_sigma)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*check) return cmd_check(o);
        if (*translate) return cmd_translate(o);
        if (*fuzz) return cmd_fuzz(o);
        if (*final_part) return cmd_final_part(o);
        if (*clusters) return cmd_clusters(o);
        if (*stats) return cmd_stats(o);
    } catch (const ResourceError& e) {
        std::cerr << "tanglemu: resource limit: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "tanglemu: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
