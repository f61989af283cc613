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

#include "crackaudit/error.hpp"

namespace crackaudit {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidCatalog: return "InvalidCatalog";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::CatalogMismatch: return "CatalogMismatch";
    case ErrorKind::NotAnArchive: return "NotAnArchive";
    case ErrorKind::ManifestMissing: return "ManifestMissing";
    case ErrorKind::DecompressFailed: return "DecompressFailed";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::TruncatedChunk: return "TruncatedChunk";
    case ErrorKind::StringIndexOutOfRange: return "StringIndexOutOfRange";
    case ErrorKind::Utf16DecodeError: return "Utf16DecodeError";
    case ErrorKind::XmlSyntaxError: return "XmlSyntaxError";
    case ErrorKind::RootElementNotManifest: return "RootElementNotManifest";
    case ErrorKind::BadCaptureMagic: return "BadCaptureMagic";
    case ErrorKind::UnsupportedLinkType: return "UnsupportedLinkType";
    case ErrorKind::TruncatedCapture: return "TruncatedCapture";
    case ErrorKind::InvalidAddress: return "InvalidAddress";
    case ErrorKind::MissingHeader: return "MissingHeader";
    case ErrorKind::RowError: return "RowError";
    case ErrorKind::NoSamples: return "NoSamples";
    case ErrorKind::DuplicateVersionTag: return "DuplicateVersionTag";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::AppIdMismatch: return "AppIdMismatch";
    case ErrorKind::SameBuildKind: return "SameBuildKind";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::NoData: return "NoData";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error(message), kind_(kind), line_(line)
{
}

} // namespace crackaudit
