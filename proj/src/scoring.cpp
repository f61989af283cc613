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

#include "crackaudit/scoring.hpp"

#include "crackaudit/error.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace crackaudit {

std::string_view to_string(IntentionClass c) noexcept
{
    switch (c) {
    case IntentionClass::Malicious: return "malicious";
    case IntentionClass::RatherMalicious: return "rather malicious";
    case IntentionClass::RatherBenign: return "rather benign";
    case IntentionClass::Benign: return "benign";
    }
    return "rather benign";
}

std::string_view short_label(IntentionClass c) noexcept
{
    switch (c) {
    case IntentionClass::Malicious: return "l1";
    case IntentionClass::RatherMalicious: return "l2";
    case IntentionClass::RatherBenign: return "l3";
    case IntentionClass::Benign: return "l4";
    }
    return "l3";
}

std::optional<IntentionClass> parse_intention_class(std::string_view text) noexcept
{
    std::string t;
    for (char c : text) {
        if (c == '-' || c == '_') c = ' ';
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (t == "l1" || t == "1" || t == "malicious") return IntentionClass::Malicious;
    if (t == "l2" || t == "2" || t == "rather malicious") return IntentionClass::RatherMalicious;
    if (t == "l3" || t == "3" || t == "rather benign") return IntentionClass::RatherBenign;
    if (t == "l4" || t == "4" || t == "benign") return IntentionClass::Benign;
    return std::nullopt;
}

Thresholds::Thresholds(double malicious_below, double benign_above)
    : lo_(malicious_below), hi_(benign_above)
{
    if (!(std::isfinite(lo_) && std::isfinite(hi_) && -1.0 <= lo_ && lo_ <= 0.0 &&
          0.0 <= hi_ && hi_ <= 1.0)) {
        throw Error(ErrorKind::InvalidWeights,
                    "thresholds must satisfy -1 <= a <= 0 <= b <= 1");
    }
}

namespace {

void require_same_catalog(const PermissionVector& a, const PermissionVector& b)
{
    if (a.catalog_fingerprint() != b.catalog_fingerprint() || a.size() != b.size()) {
        throw Error(ErrorKind::CatalogMismatch,
                    "permission vectors were built from different catalogs");
    }
}

constexpr double kBoundaryTolerance = 1e-12;

double snap(double s, double boundary)
{
    return std::abs(s - boundary) <= kBoundaryTolerance ? boundary : s;
}

} // namespace

int group_difference(const PermissionVector& official, const PermissionVector& cracked,
                     std::span<const int> group)
{
    require_same_catalog(official, cracked);
    int sum = 0;
    for (int j : group) {
        sum += static_cast<int>(official.test(j)) - static_cast<int>(cracked.test(j));
    }
    return (sum > 0) - (sum < 0);
}

IntentionScore intention_score(const GroupDifferences& deltas, const GroupWeights& weights)
{
    IntentionScore s;
    s.deltas = deltas;
    s.weights = weights;
    for (std::size_t l = 0; l < kGroupCount; ++l) {
        s.value += weights[l] * deltas.delta[l];
    }
    return s;
}

IntentionClass classify(double score, const Thresholds& t)
{
    double s = snap(snap(snap(score, t.malicious_below()), 0.0), t.benign_above());
    if (s < t.malicious_below()) return IntentionClass::Malicious;
    if (s < 0.0) return IntentionClass::RatherMalicious;
    if (s <= t.benign_above()) return IntentionClass::RatherBenign;
    return IntentionClass::Benign;
}

PairVerdict score_pair(const PermissionVector& official, const PermissionVector& cracked,
                       const GroupWeights& weights, const PermissionCatalog& catalog,
                       const Thresholds& thresholds)
{
    require_same_catalog(official, cracked);
    if (official.catalog_fingerprint() != catalog.fingerprint()) {
        throw Error(ErrorKind::CatalogMismatch, "permission vectors do not match the catalog");
    }
    PairVerdict v;
    GroupDifferences d;
    for (std::size_t l = 0; l < kGroupCount; ++l) {
        auto members = catalog.group_members(static_cast<int>(l + 1));
        d.delta[l] = group_difference(official, cracked, members);
        for (int j : members) {
            if (official.test(j) != cracked.test(j)) v.differing[l].push_back(j);
        }
    }
    v.score = intention_score(d, weights);
    v.thresholds = thresholds;
    v.label = classify(v.score, thresholds);
    return v;
}

} // namespace crackaudit
