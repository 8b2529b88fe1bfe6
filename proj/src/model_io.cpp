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

#include "tangle/model_io.hpp"

#include <fstream>

namespace tangle {

namespace {

std::size_t world(const KripkeModel& m, const nlohmann::json& label)
{
    if (!label.is_string()) throw ModelError("world labels must be strings");
    auto w = m.find(label.get<std::string>());
    if (!w) throw ModelError("unknown world '" + label.get<std::string>() + "'");
    return *w;
}

} // namespace

KripkeModel model_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("worlds")) throw ModelError("model needs a \"worlds\" list");
    KripkeModel m;
    for (const auto& w : j.at("worlds")) {
        if (!w.is_string()) throw ModelError("world labels must be strings");
        m.add_world(w.get<std::string>());
    }
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ModelError("edges are [from, to] pairs");
            m.add_edge(world(m, e[0]), world(m, e[1]));
        }
    }
    if (j.contains("val")) {
        for (const auto& [p, ws] : j.at("val").items()) {
            m.declare_prop(p);
            for (const auto& w : ws) m.set_prop(p, world(m, w));
        }
    }
    if (j.value("close", false)) {
        m.close_weakly_transitive();
    } else if (auto bad = m.wk4_violation()) {
        throw ModelError("relation is not weakly transitive: " + m.label((*bad)[0]) + " -> "
                         + m.label((*bad)[1]) + " -> " + m.label((*bad)[2]) + " but not "
                         + m.label((*bad)[0]) + " -> " + m.label((*bad)[2]));
    }
    return m;
}

nlohmann::json model_to_json(const KripkeModel& m)
{
    nlohmann::json j;
    j["worlds"] = nlohmann::json::array();
    for (std::size_t w = 0; w < m.size(); ++w) j["worlds"].push_back(m.label(w));
    j["edges"] = nlohmann::json::array();
    for (std::size_t u = 0; u < m.size(); ++u)
        m.succ(u).for_each([&](std::size_t v) { j["edges"].push_back({m.label(u), m.label(v)}); });
    j["val"] = nlohmann::json::object();
    for (const auto& [p, s] : m.valuation()) {
        auto& list = j["val"][p] = nlohmann::json::array();
        s.for_each([&](std::size_t w) { list.push_back(m.label(w)); });
    }
    return j;
}

KripkeModel load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(path + ": " + e.what());
    }
    return model_from_json(j);
}

void save_model(const KripkeModel& m, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ModelError("cannot write " + path);
    out << model_to_json(m).dump(2) << "\n";
}

} // namespace tangle
