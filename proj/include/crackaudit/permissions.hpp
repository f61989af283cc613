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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crackaudit {

/// Number of scoring groups the catalog is partitioned into.
inline constexpr std::size_t kGroupCount = 3;

/// Size of the built-in catalog.
inline constexpr std::size_t kBuiltinPermissionCount = 16;

enum class Protection { Normal, Dangerous, Special };

std::string_view to_string(Protection p) noexcept;
std::optional<Protection> parse_protection(std::string_view text) noexcept;

struct PermissionEntry {
    int index = 0;          // 1-based position in the catalog
    std::string name;       // fully-qualified, e.g. android.permission.INTERNET
    Protection protection = Protection::Normal;
    int group = 1;          // 1..kGroupCount

    friend bool operator==(const PermissionEntry&, const PermissionEntry&) = default;
};

/// Ordered, immutable list of tracked permissions.
///
/// Indices are 1-based and contiguous. Every entry belongs to exactly one of
/// the kGroupCount groups; group 1 carries the permissions most indicative of
/// malicious intent, group 3 the ones requested by benign and malicious apps
/// alike. The constructor validates all of this and throws InvalidCatalog.
class PermissionCatalog {
public:
    explicit PermissionCatalog(std::vector<PermissionEntry> entries);

    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const PermissionEntry> entries() const noexcept { return entries_; }

    /// 1-based lookup; throws std::out_of_range.
    const PermissionEntry& entry(int index) const;

    std::optional<int> index_of(std::string_view name) const noexcept;

    /// Sorted 1-based indices of the members of `group` (1..kGroupCount).
    std::span<const int> group_members(int group) const;

    /// Stable content hash; vectors built from different catalogs never mix.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    friend bool operator==(const PermissionCatalog& a, const PermissionCatalog& b)
    {
        return a.fingerprint_ == b.fingerprint_ && a.entries_ == b.entries_;
    }

private:
    std::vector<PermissionEntry> entries_;
    std::array<std::vector<int>, kGroupCount> groups_;
    std::uint64_t fingerprint_ = 0;
};

/// The fixed 16-permission catalog with its protection levels and groups.
const PermissionCatalog& builtin_catalog();

/// Per-group weights; non-negative and summing to one.
class GroupWeights {
public:
    /// (0.6, 0.3, 0.1)
    GroupWeights() noexcept;

    /// Throws InvalidWeights unless every weight is finite, non-negative and
    /// the sum is 1 within 1e-9.
    explicit GroupWeights(std::array<double, kGroupCount> w);

    double operator[](std::size_t group0) const noexcept { return w_[group0]; }
    const std::array<double, kGroupCount>& values() const noexcept { return w_; }

    friend bool operator==(const GroupWeights&, const GroupWeights&) = default;

private:
    std::array<double, kGroupCount> w_;
};

/// Binary request flags over a catalog plus the names it does not track.
class PermissionVector {
public:
    PermissionVector() = default;
    explicit PermissionVector(const PermissionCatalog& catalog);

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint64_t catalog_fingerprint() const noexcept { return catalog_fp_; }

    /// 1-based accessors.
    bool test(int index) const;
    void set(int index, bool value = true);

    std::size_t count() const noexcept;
    std::vector<int> indices() const;

    const std::vector<std::string>& untracked() const noexcept { return untracked_; }
    void set_untracked(std::vector<std::string> names);

    friend bool operator==(const PermissionVector&, const PermissionVector&) = default;

private:
    std::vector<std::uint8_t> bits_;
    std::vector<std::string> untracked_;
    std::uint64_t catalog_fp_ = 0;
};

/// Bit j is set iff the catalog's j-th name is among `names`; every other
/// name lands in untracked(), deduplicated and sorted. Matching is exact and
/// case-sensitive.
PermissionVector vector_from_names(std::span<const std::string> names,
                                   const PermissionCatalog& catalog);

} // namespace crackaudit
