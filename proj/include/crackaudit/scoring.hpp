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

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace crackaudit {

/// Sign of the per-group request difference, official minus cracked.
/// Each component is -1, 0 or +1; -1 means the cracked build asks for more.
struct GroupDifferences {
    std::array<int, kGroupCount> delta{};

    friend bool operator==(const GroupDifferences&, const GroupDifferences&) = default;
};

struct IntentionScore {
    double value = 0.0;        // in [-1, 1]
    GroupDifferences deltas;
    GroupWeights weights;
};

enum class IntentionClass { Malicious, RatherMalicious, RatherBenign, Benign };

inline constexpr std::size_t kClassCount = 4;

std::string_view to_string(IntentionClass c) noexcept;
/// "l1".."l4"
std::string_view short_label(IntentionClass c) noexcept;
/// Accepts l1..l4, 1..4, or the hyphenated/underscored class names.
std::optional<IntentionClass> parse_intention_class(std::string_view text) noexcept;

/// Class boundaries. Scores below `malicious_below` are Malicious, scores in
/// [malicious_below, 0) RatherMalicious, [0, benign_above] RatherBenign and
/// anything higher Benign.
class Thresholds {
public:
    Thresholds() noexcept = default;
    /// Throws InvalidWeights unless -1 <= malicious_below <= 0 <= benign_above <= 1.
    Thresholds(double malicious_below, double benign_above);

    double malicious_below() const noexcept { return lo_; }
    double benign_above() const noexcept { return hi_; }

    friend bool operator==(const Thresholds&, const Thresholds&) = default;

private:
    double lo_ = -0.4;
    double hi_ = 0.4;
};

/// sgn(sum over group of official - cracked). Integer arithmetic throughout.
/// Throws CatalogMismatch when the vectors come from different catalogs.
int group_difference(const PermissionVector& official, const PermissionVector& cracked,
                     std::span<const int> group);

IntentionScore intention_score(const GroupDifferences& deltas, const GroupWeights& weights);

/// Scores within 1e-12 of a boundary are treated as lying on it.
IntentionClass classify(double score, const Thresholds& thresholds = {});
inline IntentionClass classify(const IntentionScore& s, const Thresholds& t = {})
{
    return classify(s.value, t);
}

/// Result of comparing one official/cracked permission pair.
struct PairVerdict {
    IntentionScore score;
    IntentionClass label = IntentionClass::RatherBenign;
    Thresholds thresholds;
    /// Per group: 1-based catalog indices requested by exactly one side.
    std::array<std::vector<int>, kGroupCount> differing;
};

PairVerdict score_pair(const PermissionVector& official, const PermissionVector& cracked,
                       const GroupWeights& weights, const PermissionCatalog& catalog,
                       const Thresholds& thresholds = {});

} // namespace crackaudit
