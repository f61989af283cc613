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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crackaudit {

enum class ErrorKind {
    // permission model
    InvalidCatalog,
    InvalidWeights,
    CatalogMismatch,
    // manifest ingest
    NotAnArchive,
    ManifestMissing,
    DecompressFailed,
    BadMagic,
    TruncatedChunk,
    StringIndexOutOfRange,
    Utf16DecodeError,
    XmlSyntaxError,
    RootElementNotManifest,
    // traffic analysis
    BadCaptureMagic,
    UnsupportedLinkType,
    TruncatedCapture,
    InvalidAddress,
    // telemetry
    MissingHeader,
    RowError,
    NoSamples,
    DuplicateVersionTag,
    EmptyInput,
    // reporting
    AppIdMismatch,
    SameBuildKind,
    EmptyCorpus,
    NoData,
    // I/O
    FileNotFound,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Typed failure raised by every parser and analysis stage.
///
/// `line()` is meaningful only for RowError (1-based input line).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::size_t line = 0);

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    ErrorKind kind_;
    std::size_t line_;
};

} // namespace crackaudit
