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

#include "support/capture_oracle.hpp"
#include "support/packet_builder.hpp"

#include <doctest.h>

#include <random>
#include <string>

using namespace crackaudit;
using namespace testsupport;

namespace {

const Endpoint kDev = v4(10, 0, 0, 2, 40001);

std::vector<std::uint8_t> str_bytes(const std::string& s) { return {s.begin(), s.end()}; }

// Handshake plus optional first payload from the device.
void connect(PcapWriter& w, Endpoint dev, Endpoint remote, const std::string& payload = {})
{
    w.segment({dev, remote, SYN, 100, 0, {}});
    w.segment({remote, dev, SYN | ACK, 900, 101, {}});
    w.segment({dev, remote, ACK, 101, 901, {}});
    if (!payload.empty()) w.segment({dev, remote, PSH | ACK, 101, 901, payload});
}

PortCounts counts_for(const std::vector<std::uint8_t>& pcap, const std::string& device,
                      CountMode cm = CountMode::Connections, HttpMode hm = HttpMode::Signature)
{
    auto cap = parse_capture(pcap);
    return count_ports(track_flows(cap.records, IpAddress::parse(device)), cm, hm);
}

PcapWriter five_packets()
{
    PcapWriter w;
    connect(w, kDev, v4(1, 1, 1, 1, 80), "GET / HTTP/1.1\r\n\r\n");
    w.segment({kDev, v4(1, 1, 1, 1, 80), FIN | ACK, 120, 901, {}});
    return w;
}

} // namespace

TEST_CASE("IpAddress")
{
    CHECK(IpAddress::parse("10.0.0.2").to_string() == "10.0.0.2");
    CHECK(IpAddress::parse("fd00::2").is_v6());
    CHECK(IpAddress::parse("FD00:0::2") == IpAddress::parse("fd00::2"));
    CHECK_THROWS_AS(IpAddress::parse("10.0.0"), Error);
    CHECK_THROWS_AS(IpAddress::parse(""), Error);
}

TEST_CASE("parse_capture")
{
    auto w = five_packets();
    auto cap = parse_capture(w.bytes());
    CHECK(cap.records.size() == 5);
    CHECK_FALSE(cap.truncation.has_value());
    CHECK(cap.link_type == LinkType::Ethernet);
    for (const auto& r : cap.records) CHECK(r.layers.has_value());

    auto cut = w.bytes();
    cut.resize(cut.size() - 7);
    auto partial = parse_capture(cut);
    CHECK(partial.records.size() == 4);
    REQUIRE(partial.truncation.has_value());
    CHECK(partial.truncation->kind() == ErrorKind::TruncatedCapture);

    try {
        parse_capture({});
        FAIL("empty accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadCaptureMagic);
    }
    auto bad_link = w.bytes();
    bad_link[20] = 0x99;
    CHECK_THROWS_AS(parse_capture(bad_link), Error);
}

TEST_CASE("big-endian capture")
{
    auto le = five_packets().bytes();
    std::vector<std::uint8_t> be = le;
    auto swap4 = [&](std::size_t off) { std::reverse(be.begin() + off, be.begin() + off + 4); };
    auto swap2 = [&](std::size_t off) { std::reverse(be.begin() + off, be.begin() + off + 2); };
    swap4(0);
    swap2(4);
    swap2(6);
    for (std::size_t off : {8u, 12u, 16u, 20u}) swap4(off);
    std::size_t pos = 24;
    while (pos < be.size()) {
        const std::uint32_t incl = le[pos + 8] | le[pos + 9] << 8 | le[pos + 10] << 16 | le[pos + 11] << 24;
        for (std::size_t k = 0; k < 16; k += 4) swap4(pos + k);
        pos += 16 + incl;
    }
    CHECK(parse_capture(be).records.size() == 5);
    CHECK(counts_for(be, "10.0.0.2") == PortCounts{1, 1});
}

TEST_CASE("track_flows")
{
    SUBCASE("three device SYNs")
    {
        PcapWriter w;
        connect(w, kDev, v4(1, 1, 1, 1, 443));
        connect(w, v4(10, 0, 0, 2, 40002), v4(1, 1, 1, 2, 443));
        connect(w, v4(10, 0, 0, 2, 40003), v4(1, 1, 1, 1, 8080));
        auto cap = parse_capture(w.bytes());
        auto t = track_flows(cap.records, IpAddress::parse("10.0.0.2"));
        REQUIRE(t.flows.size() == 3);
        for (const auto& f : t.flows) CHECK(f.initiated_by_device);
    }
    SUBCASE("inbound only")
    {
        PcapWriter w;
        connect(w, v4(1, 1, 1, 1, 5000), kDev);
        auto cap = parse_capture(w.bytes());
        auto t = track_flows(cap.records, IpAddress::parse("10.0.0.2"));
        REQUIRE(t.flows.size() == 1);
        CHECK_FALSE(t.flows[0].initiated_by_device);
    }
    SUBCASE("no tcp")
    {
        PcapWriter w;
        Segment s{kDev, v4(8, 8, 8, 8, 53), 0, 0, 0, "query"};
        w.frame(ethernet_frame(s, 17));
        auto cap = parse_capture(w.bytes());
        CHECK(cap.records.size() == 1);
        CHECK(track_flows(cap.records, IpAddress::parse("10.0.0.2")).flows.empty());
    }
    SUBCASE("reused tuple after FIN opens a new flow")
    {
        PcapWriter w;
        const auto r = v4(1, 1, 1, 1, 80);
        connect(w, kDev, r, "GET /a HTTP/1.1\r\n\r\n");
        w.segment({kDev, r, FIN | ACK, 130, 901, {}});
        connect(w, kDev, r, "\x16\x03\x01");
        auto cap = parse_capture(w.bytes());
        auto t = track_flows(cap.records, IpAddress::parse("10.0.0.2"));
        REQUIRE(t.flows.size() == 2);
        CHECK(t.flows[0].is_http);
        CHECK_FALSE(t.flows[1].is_http);
        CHECK(count_ports(t) == PortCounts{2, 1});
        CHECK(count_ports(t, CountMode::DistinctLocalPorts) == PortCounts{1, 1});
    }
    SUBCASE("payload reassembled out of order")
    {
        PcapWriter w;
        const auto r = v4(1, 1, 1, 1, 8080);
        w.segment({kDev, r, SYN, 0xfffffff0u, 0, {}});
        w.segment({kDev, r, PSH | ACK, 0xfffffff1u + 4, 0, " /x HTTP/1.0\r\n"});
        w.segment({kDev, r, PSH | ACK, 0xfffffff1u, 0, "POST"});
        auto cap = parse_capture(w.bytes());
        auto t = track_flows(cap.records, IpAddress::parse("10.0.0.2"));
        REQUIRE(t.flows.size() == 1);
        CHECK(std::string(t.flows[0].first_device_payload.begin(), t.flows[0].first_device_payload.end()) ==
              "POST /x HTTP/1.0\r\n");
        CHECK(t.flows[0].is_http);
    }
    SUBCASE("payload beyond the window is dropped")
    {
        PcapWriter w;
        const auto r = v4(1, 1, 1, 1, 80);
        w.segment({kDev, r, SYN, 0, 0, {}});
        w.segment({kDev, r, ACK, 1, 0, std::string(600, 'z')});
        auto cap = parse_capture(w.bytes());
        auto t = track_flows(cap.records, IpAddress::parse("10.0.0.2"));
        CHECK(t.flows[0].first_device_payload.size() == kFirstPayloadLimit);
    }
    SUBCASE("raw IPv6 link")
    {
        PcapWriter w(101);
        connect(w, v6(2, 40000), v6(0x100, 80), "HEAD / HTTP/1.1\r\n\r\n");
        CHECK(counts_for(w.bytes(), "fd00::2") == PortCounts{1, 1});
    }
}

TEST_CASE("detect_http")
{
    CHECK(detect_http(str_bytes("GET /ads?id=1 HTTP/1.1\r\nHost: x\r\n\r\n")));
    CHECK_FALSE(detect_http({}));
    CHECK_FALSE(detect_http(str_bytes("\x16\x03\x01\x00\xa5\x01")));
    CHECK_FALSE(detect_http(str_bytes("GET / HTTP/2.0\r\n")));
    CHECK_FALSE(detect_http(str_bytes("get / HTTP/1.1\r\n")));
    CHECK_FALSE(detect_http(str_bytes("GET  / HTTP/1.1\r\n")));
    CHECK(detect_http(str_bytes("OPTIONS * HTTP/1.0\r\n")));
}

TEST_CASE("count_ports")
{
    PcapWriter w;
    connect(w, kDev, v4(1, 1, 1, 1, 443), "\x16\x03\x01");
    connect(w, v4(10, 0, 0, 2, 40002), v4(1, 1, 1, 2, 80), "GET / HTTP/1.1\r\n\r\n");
    connect(w, v4(10, 0, 0, 2, 40003), v4(1, 1, 1, 3, 80), "SSH-2.0-x\r\n");
    CHECK(counts_for(w.bytes(), "10.0.0.2") == PortCounts{3, 1});
    CHECK(counts_for(w.bytes(), "10.0.0.2", CountMode::Connections, HttpMode::Port80) == PortCounts{3, 2});
    CHECK(counts_for(w.bytes(), "10.0.0.9") == PortCounts{0, 0});

    CHECK(count_ports(FlowTable{}) == PortCounts{0, 0});

    PcapWriter in;
    connect(in, v4(1, 1, 1, 1, 5000), kDev, "GET / HTTP/1.1\r\n\r\n");
    connect(in, v4(1, 1, 1, 2, 5001), v4(10, 0, 0, 2, 80));
    CHECK(counts_for(in.bytes(), "10.0.0.2") == PortCounts{0, 0});
}

TEST_CASE("random captures match the oracle")
{
    std::mt19937 rng(7);
    std::size_t http_seen = 0, collapsed = 0;
    for (int n = 0; n < 300; ++n) {
        auto cap = random_capture(rng);
        CAPTURE(n);
        http_seen += oracle_counts(cap.slots, false, false).h;
        collapsed += oracle_counts(cap.slots, false, false).t != oracle_counts(cap.slots, true, false).t;
        for (int mode = 0; mode < 4; ++mode) {
            const bool distinct = mode & 1;
            const bool port80 = mode & 2;
            auto expect = oracle_counts(cap.slots, distinct, port80);
            auto got = counts_for(cap.pcap, cap.device,
                                  distinct ? CountMode::DistinctLocalPorts : CountMode::Connections,
                                  port80 ? HttpMode::Port80 : HttpMode::Signature);
            CHECK(got.t == expect.t);
            CHECK(got.h == expect.h);
        }
    }
    // The generator must actually exercise HTTP and port reuse.
    CHECK(http_seen > 0);
    CHECK(collapsed > 0);
}
