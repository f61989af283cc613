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

#include "crackaudit/traffic.hpp"

#include "byte_reader.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <cstring>

namespace crackaudit {

IpAddress IpAddress::v4(std::span<const std::uint8_t, 4> bytes)
{
    IpAddress a;
    std::copy(bytes.begin(), bytes.end(), a.bytes_.begin());
    return a;
}

IpAddress IpAddress::v6(std::span<const std::uint8_t, 16> bytes)
{
    IpAddress a;
    std::copy(bytes.begin(), bytes.end(), a.bytes_.begin());
    a.v6_ = true;
    return a;
}

IpAddress IpAddress::parse(std::string_view text)
{
    const std::string s(text);
    std::array<std::uint8_t, 16> buf{};
    if (inet_pton(AF_INET, s.c_str(), buf.data()) == 1) {
        return v4(std::span<const std::uint8_t, 4>(buf.data(), 4));
    }
    if (inet_pton(AF_INET6, s.c_str(), buf.data()) == 1) return v6(buf);
    throw Error(ErrorKind::InvalidAddress, "not an IPv4 or IPv6 address: '" + s + "'");
}

std::string IpAddress::to_string() const
{
    char buf[INET6_ADDRSTRLEN] = {};
    inet_ntop(v6_ ? AF_INET6 : AF_INET, bytes_.data(), buf, sizeof buf);
    return buf;
}

std::span<const std::uint8_t> PacketRecord::payload() const noexcept
{
    if (!layers) return {};
    return std::span<const std::uint8_t>(data).subspan(layers->payload_offset, layers->payload_length);
}

namespace {

constexpr std::uint32_t kMagicMicro = 0xa1b2c3d4;
constexpr std::uint32_t kMagicNano = 0xa1b23c4d;
constexpr std::size_t kFileHeaderSize = 24;
constexpr std::size_t kRecordHeaderSize = 16;
constexpr std::uint32_t kMaxRecordSize = 256u << 20;

constexpr std::uint16_t kEtherIpv4 = 0x0800;
constexpr std::uint16_t kEtherIpv6 = 0x86dd;
constexpr std::uint16_t kEtherVlan = 0x8100;
constexpr std::uint16_t kEtherQinQ = 0x88a8;
constexpr std::uint8_t kProtoTcp = 6;

bool supported(std::uint32_t link)
{
    switch (static_cast<LinkType>(link)) {
    case LinkType::Ethernet:
    case LinkType::RawBsd:
    case LinkType::Raw:
    case LinkType::Ipv4:
    case LinkType::Ipv6:
        return true;
    }
    return false;
}

void decode_tcp(std::span<const std::uint8_t> pkt, std::size_t at, std::size_t end, ParsedLayers& out)
{
    if (end - at < 20) return;
    const std::size_t header_len = static_cast<std::size_t>(pkt[at + 12] >> 4) * 4;
    if (header_len < 20 || header_len > end - at) return;
    TcpHeader tcp;
    tcp.src_port = detail::load_be16(pkt, at);
    tcp.dst_port = detail::load_be16(pkt, at + 2);
    tcp.seq = detail::load_be32(pkt, at + 4);
    tcp.ack = detail::load_be32(pkt, at + 8);
    tcp.flags = pkt[at + 13];
    out.tcp = tcp;
    out.payload_offset = at + header_len;
    out.payload_length = end - at - header_len;
}

std::optional<ParsedLayers> decode_ipv4(std::span<const std::uint8_t> pkt, std::size_t at)
{
    if (pkt.size() - at < 20 || (pkt[at] >> 4) != 4) return std::nullopt;
    const std::size_t ihl = static_cast<std::size_t>(pkt[at] & 0x0f) * 4;
    const std::size_t total = detail::load_be16(pkt, at + 2);
    if (ihl < 20 || ihl > pkt.size() - at || total < ihl) return std::nullopt;
    // Ethernet padding may follow the datagram; snaplen may cut it short.
    const std::size_t end = at + std::min(total, pkt.size() - at);

    ParsedLayers out;
    out.src = IpAddress::v4(std::span<const std::uint8_t, 4>(pkt.data() + at + 12, 4));
    out.dst = IpAddress::v4(std::span<const std::uint8_t, 4>(pkt.data() + at + 16, 4));
    out.protocol = pkt[at + 9];
    out.payload_offset = at + ihl;
    out.payload_length = end - at - ihl;
    const std::uint16_t fragment_offset = detail::load_be16(pkt, at + 6) & 0x1fff;
    if (out.protocol == kProtoTcp && fragment_offset == 0) decode_tcp(pkt, at + ihl, end, out);
    return out;
}

std::optional<ParsedLayers> decode_ipv6(std::span<const std::uint8_t> pkt, std::size_t at)
{
    if (pkt.size() - at < 40 || (pkt[at] >> 4) != 6) return std::nullopt;
    const std::size_t end = at + 40 + std::min<std::size_t>(detail::load_be16(pkt, at + 4),
                                                            pkt.size() - at - 40);
    ParsedLayers out;
    out.src = IpAddress::v6(std::span<const std::uint8_t, 16>(pkt.data() + at + 8, 16));
    out.dst = IpAddress::v6(std::span<const std::uint8_t, 16>(pkt.data() + at + 24, 16));

    std::uint8_t next = pkt[at + 6];
    std::size_t pos = at + 40;
    bool first_fragment = true;
    for (int hops = 0; hops < 8; ++hops) {
        if (next == 0 || next == 43 || next == 60 || next == 44 || next == 51) {
            if (end - pos < 8) return out;
            std::size_t len = 0;
            if (next == 44) {
                len = 8;
                first_fragment = (detail::load_be16(pkt, pos + 2) >> 3) == 0;
            } else if (next == 51) {
                len = (static_cast<std::size_t>(pkt[pos + 1]) + 2) * 4;
            } else {
                len = (static_cast<std::size_t>(pkt[pos + 1]) + 1) * 8;
            }
            if (len > end - pos) return out;
            next = pkt[pos];
            pos += len;
            continue;
        }
        break;
    }
    out.protocol = next;
    out.payload_offset = pos;
    out.payload_length = end - pos;
    if (next == kProtoTcp && first_fragment) decode_tcp(pkt, pos, end, out);
    return out;
}

std::optional<ParsedLayers> decode_ip(std::span<const std::uint8_t> pkt, std::size_t at)
{
    if (at >= pkt.size()) return std::nullopt;
    switch (pkt[at] >> 4) {
    case 4: return decode_ipv4(pkt, at);
    case 6: return decode_ipv6(pkt, at);
    default: return std::nullopt;
    }
}

} // namespace

std::optional<ParsedLayers> decode_layers(LinkType link, std::span<const std::uint8_t> frame)
{
    if (link != LinkType::Ethernet) return decode_ip(frame, 0);

    if (frame.size() < 14) return std::nullopt;
    std::size_t at = 12;
    std::uint16_t ether_type = detail::load_be16(frame, at);
    while ((ether_type == kEtherVlan || ether_type == kEtherQinQ) && frame.size() >= at + 6) {
        at += 4;
        ether_type = detail::load_be16(frame, at);
    }
    at += 2;
    if (ether_type == kEtherIpv4) return decode_ipv4(frame, at);
    if (ether_type == kEtherIpv6) return decode_ipv6(frame, at);
    return std::nullopt;
}

Capture parse_capture(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kFileHeaderSize) {
        throw Error(ErrorKind::BadCaptureMagic, "capture is shorter than a pcap file header");
    }
    const std::uint32_t raw_magic = detail::load_le32(bytes, 0);
    bool swapped = false;
    bool nanos = false;
    if (raw_magic == kMagicMicro || raw_magic == kMagicNano) {
        nanos = raw_magic == kMagicNano;
    } else if (detail::byteswap32(raw_magic) == kMagicMicro ||
               detail::byteswap32(raw_magic) == kMagicNano) {
        swapped = true;
        nanos = detail::byteswap32(raw_magic) == kMagicNano;
    } else {
        throw Error(ErrorKind::BadCaptureMagic, "not a classic pcap file");
    }
    auto u32 = [&](std::size_t at) {
        return swapped ? detail::load_be32(bytes, at) : detail::load_le32(bytes, at);
    };

    Capture cap;
    const std::uint32_t link = u32(20) & 0x0fffffff;
    if (!supported(link)) {
        throw Error(ErrorKind::UnsupportedLinkType,
                    "unsupported pcap link type " + std::to_string(link));
    }
    cap.link_type = static_cast<LinkType>(link);

    std::size_t pos = kFileHeaderSize;
    while (pos < bytes.size()) {
        if (bytes.size() - pos < kRecordHeaderSize) {
            cap.truncation.emplace(ErrorKind::TruncatedCapture,
                                   "capture ends inside a record header at offset " +
                                       std::to_string(pos));
            break;
        }
        const std::uint32_t incl = u32(pos + 8);
        if (incl > kMaxRecordSize || incl > bytes.size() - pos - kRecordHeaderSize) {
            cap.truncation.emplace(ErrorKind::TruncatedCapture,
                                   "record at offset " + std::to_string(pos) + " declares " +
                                       std::to_string(incl) + " bytes past the end of the capture");
            break;
        }
        PacketRecord rec;
        rec.ts_sec = u32(pos);
        rec.ts_usec = nanos ? u32(pos + 4) / 1000 : u32(pos + 4);
        const auto body = bytes.subspan(pos + kRecordHeaderSize, incl);
        rec.data.assign(body.begin(), body.end());
        rec.layers = decode_layers(cap.link_type, rec.data);
        cap.records.push_back(std::move(rec));
        pos += kRecordHeaderSize + incl;
    }
    return cap;
}

} // namespace crackaudit
