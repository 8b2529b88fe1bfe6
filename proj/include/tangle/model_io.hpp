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

/// \file model_io.hpp
/// \brief JSON model files:
///
///     {"worlds": ["a", "b"], "edges": [["a", "b"]], "val": {"p": ["b"]},
///      "close": false}
///
/// With "close": true the relation is weakly-transitively closed on load;
/// otherwise a relation that is not weakly transitive is rejected.

#pragma once

#include <string>

#include "json.hpp"
#include "tangle/kripke.hpp"

namespace tangle {

KripkeModel model_from_json(const nlohmann::json& j);
/// Sorted, deterministic: worlds in index order, edges by index, propositions
/// by name.
nlohmann::json model_to_json(const KripkeModel& m);

KripkeModel load_model(const std::string& path);
void save_model(const KripkeModel& m, const std::string& path);

} // namespace tangle
