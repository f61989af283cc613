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

#include "crackaudit/error.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crackaudit {

/// IPv4 or IPv6 address; IPv4 occupies the first four bytes.
class IpAddress {
public:
    IpAddress() = default;
    static IpAddress v4(std::span<const std::uint8_t, 4> bytes);
    static IpAddress v6(std::span<const std::uint8_t, 16> bytes);
    /// Dotted quad or RFC 4291 text. Throws InvalidAddress.
    static IpAddress parse(std::string_view text);

    bool is_v6() const noexcept { return v6_; }
    std::string to_string() const;

    friend auto operator<=>(const IpAddress&, const IpAddress&) = default;

private:
    std::array<std::uint8_t, 16> bytes_{};
    bool v6_ = false;
};

enum class LinkType : std::uint32_t {
    Ethernet = 1,
    RawBsd = 12,
    Raw = 101,
    Ipv4 = 228,
    Ipv6 = 229,
};

namespace tcp_flags {
inline constexpr std::uint8_t kFin = 0x01;
inline constexpr std::uint8_t kSyn = 0x02;
inline constexpr std::uint8_t kRst = 0x04;
inline constexpr std::uint8_t kPsh = 0x08;
inline constexpr std::uint8_t kAck = 0x10;
} // namespace tcp_flags

struct TcpHeader {
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint32_t seq = 0;
    std::uint32_t ack = 0;
    std::uint8_t flags = 0;
};

/// Network and transport layers decoded from one frame. Offsets index into
/// PacketRecord::data.
struct ParsedLayers {
    IpAddress src;
    IpAddress dst;
    std::uint8_t protocol = 0;
    std::optional<TcpHeader> tcp;
    std::size_t payload_offset = 0;
    std::size_t payload_length = 0;
};

struct PacketRecord {
    std::uint32_t ts_sec = 0;
    std::uint32_t ts_usec = 0;
    std::vector<std::uint8_t> data;      // captured link-layer bytes
    std::optional<ParsedLayers> layers;  // present only when headers validate

    std::span<const std::uint8_t> payload() const noexcept;
};

/// Complete records plus the error that stopped the walk, if any.
struct Capture {
    LinkType link_type = LinkType::Ethernet;
    std::vector<PacketRecord> records;
    std::optional<Error> truncation;
};

/// Classic pcap reader, either byte order. Throws BadCaptureMagic or
/// UnsupportedLinkType; a damaged tail is reported through
/// Capture::truncation after every complete record.
Capture parse_capture(std::span<const std::uint8_t> bytes);

/// Layer decoding for one frame; exposed for tests.
std::optional<ParsedLayers> decode_layers(LinkType link, std::span<const std::uint8_t> frame);

/// Direction-normalised connection identity; "local" is the device side.
struct FlowKey {
    IpAddress local;
    std::uint16_t local_port = 0;
    IpAddress remote;
    std::uint16_t remote_port = 0;

    friend auto operator<=>(const FlowKey&, const FlowKey&) = default;
};

inline constexpr std::size_t kFirstPayloadLimit = 512;

struct FlowRecord {
    FlowKey key;
    bool initiated_by_device = false;
    /// Up to kFirstPayloadLimit contiguous bytes sent by the device, in
    /// sequence order from the start of the stream.
    std::vector<std::uint8_t> first_device_payload;
    bool is_http = false;
};

struct FlowTable {
    std::vector<FlowRecord> flows;  // in order of first appearance
};

FlowTable track_flows(std::span<const PacketRecord> packets, const IpAddress& device);

/// True iff the bytes start with an HTTP/1.x request line.
bool detect_http(std::span<const std::uint8_t> payload) noexcept;

enum class CountMode { Connections, DistinctLocalPorts };
enum class HttpMode { Signature, Port80 };

struct PortCounts {
    std::size_t t = 0;  // TCP connections opened by the device
    std::size_t h = 0;  // those carrying HTTP

    friend bool operator==(const PortCounts&, const PortCounts&) = default;
};

PortCounts count_ports(const FlowTable& flows, CountMode count_mode = CountMode::Connections,
                       HttpMode http_mode = HttpMode::Signature);

/// Whether a device-initiated flow counts towards h under `mode`.
bool counts_as_http(const FlowRecord& flow, HttpMode mode) noexcept;

} // namespace crackaudit
