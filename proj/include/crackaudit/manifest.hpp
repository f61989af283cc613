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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crackaudit {

enum class SourceKind { ApkContainer, BinaryXml, TextXml };

std::string_view to_string(SourceKind kind) noexcept;

/// Requested permissions and package name pulled from one manifest.
/// `uses_permissions` keeps document order with duplicates dropped.
struct ManifestDocument {
    std::string package_name;
    std::vector<std::string> uses_permissions;
    SourceKind source_kind = SourceKind::TextXml;

    friend bool operator==(const ManifestDocument&, const ManifestDocument&) = default;
};

/// One central-directory record of an APK.
struct ApkEntrySummary {
    std::string path;
    bool compressed = false;
    std::uint32_t uncompressed_size = 0;
    std::uint32_t crc32 = 0;
};

/// Read-only view over a ZIP archive held in memory.
///
/// Only the central directory is consulted for sizes and offsets. Entries
/// must be stored or deflated and unencrypted.
class ZipArchive {
public:
    /// Throws NotAnArchive.
    explicit ZipArchive(std::span<const std::uint8_t> bytes);

    const std::vector<ApkEntrySummary>& entries() const noexcept { return entries_; }
    std::optional<std::size_t> find(std::string_view path) const noexcept;

    /// Decompressed, CRC-checked contents. Throws DecompressFailed or NotAnArchive.
    std::vector<std::uint8_t> read(std::size_t entry) const;

private:
    struct Location {
        std::uint16_t method = 0;
        std::uint16_t flags = 0;
        std::uint32_t compressed_size = 0;
        std::uint32_t local_header_offset = 0;
    };

    std::span<const std::uint8_t> bytes_;
    std::vector<ApkEntrySummary> entries_;
    std::vector<Location> locations_;
};

inline constexpr std::string_view kAndroidNamespace =
    "http://schemas.android.com/apk/res/android";

ManifestDocument open_apk(std::span<const std::uint8_t> bytes);
ManifestDocument parse_axml(std::span<const std::uint8_t> bytes);
ManifestDocument parse_textual_manifest(std::string_view text);

/// Dispatches on content: ZIP local-file magic, AXML chunk header, or text.
ManifestDocument load_manifest(std::span<const std::uint8_t> bytes);

PermissionVector extract_permissions(const ManifestDocument& doc,
                                     const PermissionCatalog& catalog);

} // namespace crackaudit
