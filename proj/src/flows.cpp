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

#include <algorithm>
#include <bitset>
#include <map>
#include <set>

namespace crackaudit {

namespace {

struct FlowState {
    FlowRecord record;
    bool closed = false;
    bool has_base = false;
    std::uint32_t base = 0;  // sequence number of the first stream byte
    std::array<std::uint8_t, kFirstPayloadLimit> buffer{};
    std::bitset<kFirstPayloadLimit> filled;

    void absorb(std::uint32_t data_seq, std::span<const std::uint8_t> bytes)
    {
        if (bytes.empty()) return;
        if (!has_base) {
            base = data_seq;
            has_base = true;
        }
        const std::uint32_t rel = data_seq - base;
        if (rel >= kFirstPayloadLimit) return;
        const std::size_t n = std::min<std::size_t>(bytes.size(), kFirstPayloadLimit - rel);
        for (std::size_t i = 0; i < n; ++i) {
            if (!filled[rel + i]) {
                buffer[rel + i] = bytes[i];
                filled.set(rel + i);
            }
        }
    }

    void finish()
    {
        std::size_t n = 0;
        while (n < kFirstPayloadLimit && filled[n]) ++n;
        record.first_device_payload.assign(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(n));
        record.is_http = record.initiated_by_device && detect_http(record.first_device_payload);
    }
};

bool opens_connection(const TcpHeader& tcp)
{
    return (tcp.flags & tcp_flags::kSyn) && !(tcp.flags & tcp_flags::kAck);
}

} // namespace

FlowTable track_flows(std::span<const PacketRecord> packets, const IpAddress& device)
{
    std::vector<FlowState> states;
    std::map<FlowKey, std::size_t> active;

    for (const auto& pkt : packets) {
        if (!pkt.layers || !pkt.layers->tcp) continue;
        const auto& ip = *pkt.layers;
        const auto& tcp = *ip.tcp;
        const bool from_device = ip.src == device;
        if (!from_device && ip.dst != device) continue;

        const FlowKey key = from_device ? FlowKey{ip.src, tcp.src_port, ip.dst, tcp.dst_port}
                                        : FlowKey{ip.dst, tcp.dst_port, ip.src, tcp.src_port};
        const bool device_syn = from_device && opens_connection(tcp);

        auto it = active.find(key);
        const bool reopen = it != active.end() && states[it->second].closed && device_syn;
        if (it == active.end() || reopen) {
            FlowState st;
            st.record.key = key;
            st.record.initiated_by_device = device_syn;
            states.push_back(std::move(st));
            active[key] = states.size() - 1;
            it = active.find(key);
        }
        FlowState& st = states[it->second];

        if (from_device) {
            if (device_syn && st.record.initiated_by_device && !st.has_base) {
                st.base = tcp.seq + 1;
                st.has_base = true;
            }
            const std::uint32_t data_seq = tcp.seq + ((tcp.flags & tcp_flags::kSyn) ? 1u : 0u);
            st.absorb(data_seq, pkt.payload());
        }
        if (tcp.flags & (tcp_flags::kFin | tcp_flags::kRst)) st.closed = true;
    }

    FlowTable table;
    table.flows.reserve(states.size());
    for (auto& st : states) {
        st.finish();
        table.flows.push_back(std::move(st.record));
    }
    return table;
}

bool detect_http(std::span<const std::uint8_t> payload) noexcept
{
    static constexpr std::string_view kMethods[] = {"GET",     "POST",    "HEAD",  "PUT",  "DELETE",
                                                    "OPTIONS", "CONNECT", "TRACE", "PATCH"};
    const std::string_view text(reinterpret_cast<const char*>(payload.data()), payload.size());

    std::size_t pos = std::string_view::npos;
    for (auto m : kMethods) {
        if (text.size() > m.size() && text.substr(0, m.size()) == m && text[m.size()] == ' ') {
            pos = m.size() + 1;
            break;
        }
    }
    if (pos == std::string_view::npos) return false;

    const std::size_t target_end = text.find_first_of(" \r\n", pos);
    if (target_end == std::string_view::npos || target_end == pos || text[target_end] != ' ') {
        return false;
    }
    const std::string_view rest = text.substr(target_end + 1);
    constexpr std::string_view kVersion = "HTTP/1.";
    return rest.size() >= kVersion.size() + 3 && rest.substr(0, kVersion.size()) == kVersion &&
           rest[kVersion.size()] >= '0' && rest[kVersion.size()] <= '9' &&
           rest[kVersion.size() + 1] == '\r' && rest[kVersion.size() + 2] == '\n';
}

bool counts_as_http(const FlowRecord& flow, HttpMode mode) noexcept
{
    if (!flow.initiated_by_device) return false;
    return mode == HttpMode::Port80 ? flow.key.remote_port == 80 : flow.is_http;
}

PortCounts count_ports(const FlowTable& table, CountMode count_mode, HttpMode http_mode)
{
    PortCounts out;
    if (count_mode == CountMode::Connections) {
        for (const auto& f : table.flows) {
            if (!f.initiated_by_device) continue;
            ++out.t;
            if (counts_as_http(f, http_mode)) ++out.h;
        }
        return out;
    }
    std::set<std::pair<IpAddress, std::uint16_t>> opened;
    std::set<std::pair<IpAddress, std::uint16_t>> http;
    for (const auto& f : table.flows) {
        if (!f.initiated_by_device) continue;
        opened.emplace(f.key.local, f.key.local_port);
        if (counts_as_http(f, http_mode)) http.emplace(f.key.local, f.key.local_port);
    }
    out.t = opened.size();
    out.h = http.size();
    return out;
}

} // namespace crackaudit
