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

#include "crackaudit/permissions.hpp"

#include "crackaudit/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace crackaudit {

std::string_view to_string(Protection p) noexcept
{
    switch (p) {
    case Protection::Normal: return "normal";
    case Protection::Dangerous: return "dangerous";
    case Protection::Special: return "special";
    }
    return "normal";
}

std::optional<Protection> parse_protection(std::string_view text) noexcept
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "normal") return Protection::Normal;
    if (lower == "dangerous") return Protection::Dangerous;
    if (lower == "special") return Protection::Special;
    return std::nullopt;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes)
{
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

PermissionCatalog::PermissionCatalog(std::vector<PermissionEntry> entries)
    : entries_(std::move(entries))
{
    if (entries_.empty()) {
        throw Error(ErrorKind::InvalidCatalog, "catalog has no entries");
    }
    std::unordered_set<std::string> seen;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.index != static_cast<int>(i + 1)) {
            throw Error(ErrorKind::InvalidCatalog,
                        "catalog indices must be contiguous from 1; got " +
                            std::to_string(e.index) + " at position " + std::to_string(i + 1));
        }
        if (e.name.empty()) {
            throw Error(ErrorKind::InvalidCatalog,
                        "catalog entry " + std::to_string(e.index) + " has an empty name");
        }
        if (!seen.insert(e.name).second) {
            throw Error(ErrorKind::InvalidCatalog, "duplicate catalog name " + e.name);
        }
        if (e.group < 1 || e.group > static_cast<int>(kGroupCount)) {
            throw Error(ErrorKind::InvalidCatalog,
                        "catalog entry " + std::to_string(e.index) + " has group " +
                            std::to_string(e.group) + " outside 1.." +
                            std::to_string(kGroupCount));
        }
        groups_[static_cast<std::size_t>(e.group - 1)].push_back(e.index);
        h = fnv1a(h, e.name);
        h = fnv1a(h, std::string(1, static_cast<char>('0' + e.group)));
        h = fnv1a(h, to_string(e.protection));
    }
    fingerprint_ = h;
}

const PermissionEntry& PermissionCatalog::entry(int index) const
{
    if (index < 1 || static_cast<std::size_t>(index) > entries_.size()) {
        throw std::out_of_range("permission index " + std::to_string(index));
    }
    return entries_[static_cast<std::size_t>(index - 1)];
}

std::optional<int> PermissionCatalog::index_of(std::string_view name) const noexcept
{
    for (const auto& e : entries_) {
        if (e.name == name) return e.index;
    }
    return std::nullopt;
}

std::span<const int> PermissionCatalog::group_members(int group) const
{
    if (group < 1 || group > static_cast<int>(kGroupCount)) {
        throw std::out_of_range("permission group " + std::to_string(group));
    }
    return groups_[static_cast<std::size_t>(group - 1)];
}

const PermissionCatalog& builtin_catalog()
{
    using P = Protection;
    static const PermissionCatalog catalog({
        {1, "android.permission.INTERNET", P::Normal, 1},
        {2, "android.permission.ACCESS_COARSE_LOCATION", P::Dangerous, 3},
        {3, "android.permission.ACCESS_FINE_LOCATION", P::Dangerous, 3},
        {4, "android.permission.CAMERA", P::Dangerous, 3},
        {5, "android.permission.BLUETOOTH", P::Normal, 3},
        {6, "android.permission.READ_EXTERNAL_STORAGE", P::Dangerous, 2},
        {7, "android.permission.READ_CONTACTS", P::Dangerous, 2},
        {8, "android.permission.WRITE_EXTERNAL_STORAGE", P::Dangerous, 2},
        {9, "android.permission.MEDIA_CONTENT_CONTROL", P::Special, 3},
        {10, "android.permission.READ_SMS", P::Dangerous, 1},
        {11, "android.permission.RECEIVE_SMS", P::Dangerous, 1},
        {12, "android.permission.SEND_SMS", P::Dangerous, 1},
        {13, "android.permission.WRITE_CONTACTS", P::Dangerous, 1},
        {14, "android.permission.CALL_PHONE", P::Dangerous, 1},
        {15, "android.permission.RECORD_AUDIO", P::Dangerous, 1},
        {16, "android.permission.VIBRATE", P::Normal, 1},
    });
    return catalog;
}

GroupWeights::GroupWeights() noexcept : w_{0.6, 0.3, 0.1} {}

GroupWeights::GroupWeights(std::array<double, kGroupCount> w) : w_(w)
{
    double sum = 0.0;
    for (double v : w_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorKind::InvalidWeights, "weights must be finite and non-negative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidWeights,
                    "weights must sum to 1 (got " + std::to_string(sum) + ")");
    }
}

PermissionVector::PermissionVector(const PermissionCatalog& catalog)
    : bits_(catalog.size(), 0), catalog_fp_(catalog.fingerprint())
{
}

bool PermissionVector::test(int index) const
{
    if (index < 1 || static_cast<std::size_t>(index) > bits_.size()) {
        throw std::out_of_range("permission index " + std::to_string(index));
    }
    return bits_[static_cast<std::size_t>(index - 1)] != 0;
}

void PermissionVector::set(int index, bool value)
{
    if (index < 1 || static_cast<std::size_t>(index) > bits_.size()) {
        throw std::out_of_range("permission index " + std::to_string(index));
    }
    bits_[static_cast<std::size_t>(index - 1)] = value ? 1 : 0;
}

std::size_t PermissionVector::count() const noexcept
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<int> PermissionVector::indices() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) out.push_back(static_cast<int>(i + 1));
    }
    return out;
}

void PermissionVector::set_untracked(std::vector<std::string> names)
{
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    untracked_ = std::move(names);
}

PermissionVector vector_from_names(std::span<const std::string> names,
                                   const PermissionCatalog& catalog)
{
    PermissionVector v(catalog);
    std::vector<std::string> untracked;
    for (const auto& name : names) {
        if (auto idx = catalog.index_of(name)) {
            v.set(*idx);
        } else {
            untracked.push_back(name);
        }
    }
    v.set_untracked(std::move(untracked));
    return v;
}

} // namespace crackaudit
