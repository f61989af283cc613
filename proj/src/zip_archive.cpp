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
#include "crackaudit/manifest.hpp"

#include "byte_reader.hpp"

#include <zlib.h>

#include <algorithm>
#include <limits>

namespace crackaudit {

namespace {

constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::uint32_t kCentralDirSig = 0x02014b50;
constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::size_t kEndOfCentralDirSize = 22;
constexpr std::size_t kCentralDirEntrySize = 46;
constexpr std::size_t kLocalHeaderSize = 30;
constexpr std::size_t kMaxCommentSize = 0xffff;
// Manifests are small; refuse to inflate anything absurd.
constexpr std::uint32_t kMaxEntrySize = 64u << 20;

constexpr std::uint16_t kFlagEncrypted = 0x0001;
constexpr std::uint16_t kMethodStored = 0;
constexpr std::uint16_t kMethodDeflate = 8;

[[noreturn]] void not_an_archive(const std::string& why)
{
    throw Error(ErrorKind::NotAnArchive, "not a ZIP archive: " + why);
}

std::size_t find_end_of_central_dir(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kEndOfCentralDirSize) not_an_archive("input too short");
    const std::size_t last = bytes.size() - kEndOfCentralDirSize;
    const std::size_t first = last > kMaxCommentSize ? last - kMaxCommentSize : 0;
    for (std::size_t pos = last + 1; pos-- > first;) {
        if (detail::load_le32(bytes, pos) == kEndOfCentralDirSig) return pos;
    }
    not_an_archive("end of central directory not found");
}

} // namespace

ZipArchive::ZipArchive(std::span<const std::uint8_t> bytes) : bytes_(bytes)
{
    const std::size_t eocd = find_end_of_central_dir(bytes);
    const std::uint16_t total = detail::load_le16(bytes, eocd + 10);
    const std::uint32_t cd_size = detail::load_le32(bytes, eocd + 12);
    const std::uint32_t cd_offset = detail::load_le32(bytes, eocd + 16);
    if (static_cast<std::uint64_t>(cd_offset) + cd_size > eocd) {
        not_an_archive("central directory lies outside the archive");
    }

    std::size_t pos = cd_offset;
    const std::size_t end = static_cast<std::size_t>(cd_offset) + cd_size;
    for (std::uint16_t i = 0; i < total; ++i) {
        if (pos + kCentralDirEntrySize > end) not_an_archive("truncated central directory");
        if (detail::load_le32(bytes, pos) != kCentralDirSig) {
            not_an_archive("bad central directory signature");
        }
        Location loc;
        loc.flags = detail::load_le16(bytes, pos + 8);
        loc.method = detail::load_le16(bytes, pos + 10);
        ApkEntrySummary entry;
        entry.crc32 = detail::load_le32(bytes, pos + 16);
        loc.compressed_size = detail::load_le32(bytes, pos + 20);
        entry.uncompressed_size = detail::load_le32(bytes, pos + 24);
        const std::uint16_t name_len = detail::load_le16(bytes, pos + 28);
        const std::uint16_t extra_len = detail::load_le16(bytes, pos + 30);
        const std::uint16_t comment_len = detail::load_le16(bytes, pos + 32);
        loc.local_header_offset = detail::load_le32(bytes, pos + 42);
        const std::size_t next =
            pos + kCentralDirEntrySize + name_len + extra_len + comment_len;
        if (next > end) not_an_archive("truncated central directory entry");

        entry.path.assign(reinterpret_cast<const char*>(bytes.data() + pos + kCentralDirEntrySize),
                          name_len);
        std::replace(entry.path.begin(), entry.path.end(), '\\', '/');
        entry.compressed = loc.method != kMethodStored;
        pos = next;
        if (entry.path.empty()) continue;
        entries_.push_back(std::move(entry));
        locations_.push_back(loc);
    }
}

std::optional<std::size_t> ZipArchive::find(std::string_view path) const noexcept
{
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].path == path) return i;
    }
    return std::nullopt;
}

std::vector<std::uint8_t> ZipArchive::read(std::size_t index) const
{
    const auto& entry = entries_.at(index);
    const auto& loc = locations_.at(index);
    if (loc.flags & kFlagEncrypted) {
        throw Error(ErrorKind::DecompressFailed, entry.path + ": encrypted entries are not supported");
    }
    const std::size_t lh = loc.local_header_offset;
    if (lh + kLocalHeaderSize > bytes_.size() || detail::load_le32(bytes_, lh) != kLocalHeaderSig) {
        not_an_archive(entry.path + ": bad local header");
    }
    const std::size_t data_start = lh + kLocalHeaderSize + detail::load_le16(bytes_, lh + 26) +
                                   detail::load_le16(bytes_, lh + 28);
    if (data_start > bytes_.size() || loc.compressed_size > bytes_.size() - data_start) {
        not_an_archive(entry.path + ": entry data runs past the end of the archive");
    }
    if (entry.uncompressed_size > kMaxEntrySize) {
        throw Error(ErrorKind::DecompressFailed, entry.path + ": entry too large");
    }
    auto compressed = bytes_.subspan(data_start, loc.compressed_size);

    std::vector<std::uint8_t> out;
    if (loc.method == kMethodStored) {
        if (loc.compressed_size != entry.uncompressed_size) {
            throw Error(ErrorKind::DecompressFailed, entry.path + ": stored size mismatch");
        }
        out.assign(compressed.begin(), compressed.end());
    } else if (loc.method == kMethodDeflate) {
        out.resize(entry.uncompressed_size);
        z_stream zs{};
        if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
            throw Error(ErrorKind::DecompressFailed, entry.path + ": inflate init failed");
        }
        zs.next_in = const_cast<Bytef*>(compressed.data());
        zs.avail_in = static_cast<uInt>(compressed.size());
        // One spare byte lets us tell "exactly the declared size" from "more".
        std::uint8_t spare = 0;
        zs.next_out = out.empty() ? &spare : out.data();
        zs.avail_out = out.empty() ? 1 : static_cast<uInt>(out.size());
        int rc = inflate(&zs, Z_FINISH);
        const auto produced = zs.total_out;
        inflateEnd(&zs);
        if (rc != Z_STREAM_END || produced != entry.uncompressed_size) {
            throw Error(ErrorKind::DecompressFailed, entry.path + ": corrupt deflate stream");
        }
    } else {
        throw Error(ErrorKind::DecompressFailed,
                    entry.path + ": unsupported compression method " + std::to_string(loc.method));
    }

    const auto crc = static_cast<std::uint32_t>(
        ::crc32(0L, out.data(), static_cast<uInt>(out.size())));
    if (crc != entry.crc32) {
        throw Error(ErrorKind::DecompressFailed, entry.path + ": CRC mismatch");
    }
    return out;
}

} // namespace crackaudit
