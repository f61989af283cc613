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

#include <algorithm>
#include <unordered_map>

namespace crackaudit {

namespace {

constexpr std::uint16_t kResXmlType = 0x0003;
constexpr std::uint16_t kResStringPoolType = 0x0001;
constexpr std::uint16_t kResXmlStartElementType = 0x0102;
constexpr std::uint16_t kResXmlResourceMapType = 0x0180;

constexpr std::uint32_t kNoIndex = 0xffffffff;
constexpr std::uint32_t kUtf8Flag = 1u << 8;
constexpr std::uint8_t kTypeString = 0x03;
// android:name
constexpr std::uint32_t kAttrNameResId = 0x01010003;

constexpr std::size_t kChunkHeaderSize = 8;
constexpr std::size_t kStringPoolHeaderSize = 28;
constexpr std::size_t kAttrExtSize = 20;
constexpr std::size_t kMinAttributeSize = 20;

struct ChunkHeader {
    std::uint16_t type;
    std::uint16_t header_size;
    std::uint32_t size;
};

[[noreturn]] void truncated(const std::string& what)
{
    throw Error(ErrorKind::TruncatedChunk, "truncated AXML chunk: " + what);
}

// Reads the chunk header at `at` and checks it fits inside [at, end).
ChunkHeader read_chunk(std::span<const std::uint8_t> b, std::size_t at, std::size_t end)
{
    if (at > end || end - at < kChunkHeaderSize) truncated("chunk header");
    ChunkHeader h{detail::load_le16(b, at), detail::load_le16(b, at + 2), detail::load_le32(b, at + 4)};
    if (h.header_size < kChunkHeaderSize || h.size < h.header_size) {
        truncated("chunk declares size " + std::to_string(h.size) + " smaller than its header");
    }
    if (h.size > end - at) {
        truncated("chunk size " + std::to_string(h.size) + " exceeds the remaining " +
                  std::to_string(end - at) + " bytes");
    }
    return h;
}

void append_utf8(std::string& out, std::uint32_t cp)
{
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

class StringPool {
public:
    StringPool(std::span<const std::uint8_t> b, std::size_t at, const ChunkHeader& h)
        : chunk_(b.subspan(at, h.size))
    {
        if (h.header_size < kStringPoolHeaderSize) truncated("string pool header");
        count_ = detail::load_le32(chunk_, 8);
        flags_ = detail::load_le32(chunk_, 16);
        strings_start_ = detail::load_le32(chunk_, 20);
        if (count_ > (chunk_.size() - h.header_size) / 4) truncated("string offsets");
        offsets_at_ = h.header_size;
        if (count_ > 0 && strings_start_ > chunk_.size()) truncated("string data");
        cache_.resize(count_);
    }

    std::uint32_t size() const noexcept { return count_; }

    const std::string& at(std::uint32_t index)
    {
        if (index >= count_) {
            throw Error(ErrorKind::StringIndexOutOfRange,
                        "string index " + std::to_string(index) + " out of range (pool has " +
                            std::to_string(count_) + ")");
        }
        auto& slot = cache_[index];
        if (!slot) slot = decode(index);
        return *slot;
    }

private:
    std::string decode(std::uint32_t index) const
    {
        const std::uint64_t pos =
            static_cast<std::uint64_t>(strings_start_) + detail::load_le32(chunk_, offsets_at_ + 4 * index);
        return (flags_ & kUtf8Flag) ? decode_utf8(pos) : decode_utf16(pos);
    }

    void need(std::uint64_t pos, std::uint64_t n) const
    {
        if (pos > chunk_.size() || n > chunk_.size() - pos) truncated("string runs past the pool");
    }

    std::string decode_utf8(std::uint64_t pos) const
    {
        // Two varint-ish lengths: UTF-16 units, then UTF-8 bytes.
        auto length = [&](std::uint64_t& p) {
            need(p, 1);
            std::uint32_t n = chunk_[p++];
            if (n & 0x80) {
                need(p, 1);
                n = ((n & 0x7f) << 8) | chunk_[p++];
            }
            return n;
        };
        length(pos);
        const std::uint32_t bytes = length(pos);
        need(pos, bytes);
        return std::string(reinterpret_cast<const char*>(chunk_.data() + pos), bytes);
    }

    std::string decode_utf16(std::uint64_t pos) const
    {
        need(pos, 2);
        std::uint32_t units = detail::load_le16(chunk_, pos);
        pos += 2;
        if (units & 0x8000) {
            need(pos, 2);
            units = ((units & 0x7fff) << 16) | detail::load_le16(chunk_, pos);
            pos += 2;
        }
        need(pos, static_cast<std::uint64_t>(units) * 2);
        std::string out;
        out.reserve(units);
        for (std::uint32_t i = 0; i < units; ++i) {
            std::uint32_t u = detail::load_le16(chunk_, pos + 2 * i);
            if (u >= 0xd800 && u <= 0xdbff) {
                if (i + 1 >= units) {
                    throw Error(ErrorKind::Utf16DecodeError, "unpaired high surrogate in string pool");
                }
                std::uint32_t lo = detail::load_le16(chunk_, pos + 2 * (i + 1));
                if (lo < 0xdc00 || lo > 0xdfff) {
                    throw Error(ErrorKind::Utf16DecodeError, "unpaired high surrogate in string pool");
                }
                u = 0x10000 + ((u - 0xd800) << 10) + (lo - 0xdc00);
                ++i;
            } else if (u >= 0xdc00 && u <= 0xdfff) {
                throw Error(ErrorKind::Utf16DecodeError, "unpaired low surrogate in string pool");
            }
            append_utf8(out, u);
        }
        return out;
    }

    std::span<const std::uint8_t> chunk_;
    std::uint32_t count_ = 0;
    std::uint32_t flags_ = 0;
    std::uint32_t strings_start_ = 0;
    std::size_t offsets_at_ = 0;
    std::vector<std::optional<std::string>> cache_;
};

struct Attribute {
    std::uint32_t ns;
    std::uint32_t name;
    std::uint32_t raw_value;
    std::uint8_t data_type;
    std::uint32_t data;
};

void add_unique(std::vector<std::string>& list, std::string value)
{
    if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(std::move(value));
}

} // namespace

ManifestDocument parse_axml(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kChunkHeaderSize || detail::load_le16(bytes, 0) != kResXmlType) {
        throw Error(ErrorKind::BadMagic, "not a binary XML document");
    }
    const ChunkHeader root = read_chunk(bytes, 0, bytes.size());
    const std::size_t end = root.size;
    std::size_t pos = root.header_size;

    const ChunkHeader pool_header = read_chunk(bytes, pos, end);
    if (pool_header.type != kResStringPoolType) {
        throw Error(ErrorKind::BadMagic, "binary XML does not start with a string pool");
    }
    StringPool pool(bytes, pos, pool_header);
    pos += pool_header.size;

    std::vector<std::uint32_t> resource_ids;
    ManifestDocument doc;
    doc.source_kind = SourceKind::BinaryXml;
    bool seen_root = false;

    auto is_android_name = [&](const Attribute& a) {
        if (a.name < resource_ids.size() && resource_ids[a.name] == kAttrNameResId) return true;
        const std::string& name = pool.at(a.name);
        if (a.ns == kNoIndex) return name == "android:name";
        return name == "name" && pool.at(a.ns) == kAndroidNamespace;
    };
    auto string_value = [&](const Attribute& a) -> std::optional<std::string> {
        if (a.raw_value != kNoIndex) return pool.at(a.raw_value);
        if (a.data_type == kTypeString) return pool.at(a.data);
        return std::nullopt;
    };

    while (pos < end) {
        const ChunkHeader h = read_chunk(bytes, pos, end);
        if (h.type == kResXmlResourceMapType) {
            const std::size_t n = (h.size - h.header_size) / 4;
            resource_ids.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                resource_ids[i] = detail::load_le32(bytes, pos + h.header_size + 4 * i);
            }
        } else if (h.type == kResXmlStartElementType) {
            const std::size_t ext = pos + h.header_size;
            if (h.size - h.header_size < kAttrExtSize) truncated("start element");
            const std::uint32_t element_name = detail::load_le32(bytes, ext + 4);
            const std::uint16_t attr_start = detail::load_le16(bytes, ext + 8);
            const std::uint16_t attr_size = detail::load_le16(bytes, ext + 10);
            const std::uint16_t attr_count = detail::load_le16(bytes, ext + 12);
            if (attr_count > 0) {
                if (attr_size < kMinAttributeSize) truncated("attribute record");
                const std::uint64_t attrs_end =
                    static_cast<std::uint64_t>(h.header_size) + attr_start +
                    static_cast<std::uint64_t>(attr_size) * attr_count;
                if (attrs_end > h.size) truncated("attributes run past the element");
            }

            const std::string& tag = pool.at(element_name);
            const bool wants_name = tag == "uses-permission" || tag == "uses-permission-sdk-23";
            const bool is_root = !seen_root;
            seen_root = true;
            for (std::uint16_t i = 0; i < attr_count && (wants_name || is_root); ++i) {
                const std::size_t at = ext + attr_start + static_cast<std::size_t>(attr_size) * i;
                Attribute a{detail::load_le32(bytes, at), detail::load_le32(bytes, at + 4),
                            detail::load_le32(bytes, at + 8), bytes[at + 15],
                            detail::load_le32(bytes, at + 16)};
                if (wants_name && is_android_name(a)) {
                    if (auto v = string_value(a); v && !v->empty()) {
                        add_unique(doc.uses_permissions, std::move(*v));
                    }
                } else if (is_root && tag == "manifest" && a.ns == kNoIndex &&
                           pool.at(a.name) == "package") {
                    if (auto v = string_value(a)) doc.package_name = std::move(*v);
                }
            }
        }
        // Every other chunk type (namespaces, end elements, CDATA) is skipped.
        pos += h.size;
    }
    return doc;
}

} // namespace crackaudit
