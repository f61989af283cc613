/*
 * Copyright (C) 2026 The crackaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "crackaudit/permissions.hpp"
#include "crackaudit/scoring.hpp"

#include <optional>
#include <string_view>

namespace crackaudit {

/// Catalog, weights and thresholds that drive scoring.
///
/// Override files are line-oriented `key = value` text; `#` starts a comment.
///
///     weights    = 0.6, 0.3, 0.1
///     thresholds = -0.4, 0.4
///     permission = 1 android.permission.INTERNET normal 1
///
/// `permission` lines carry index, name, protection and group. When any are
/// present they replace the built-in catalog as a whole.
struct ScoringConfig {
    PermissionCatalog catalog = builtin_catalog();
    GroupWeights weights;
    Thresholds thresholds;
};

/// Throws InvalidCatalog or InvalidWeights.
ScoringConfig parse_scoring_config(std::string_view text);

/// "w1,w2,w3"
GroupWeights parse_weights(std::string_view text);
/// "a,b"
Thresholds parse_thresholds(std::string_view text);

} // namespace crackaudit
