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

// Writes a corpus tree with manifests, per-OS telemetry logs and captures so
// that every indicator has data. Deterministic for a given seed.

#include "packet_builder.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testsupport {

inline void write_text(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << text;
}

inline void write_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& bytes)
{
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

// Copies <fixtures>/corpus/NN/{official,cracked}/manifest.xml for the first
// `apps` apps and adds telemetry-<os>.csv and capture-<os>.pcap files.
inline void build_rich_corpus(const std::filesystem::path& fixtures, const std::filesystem::path& root,
                              int apps = 25, unsigned seed = 2026)
{
    namespace fs = std::filesystem;
    std::mt19937 rng(seed);
    static const char* os_tags[] = {"kitkat", "lollipop", "marshmallow"};
    for (int app = 1; app <= apps; ++app) {
        char id[16];
        std::snprintf(id, sizeof id, "%02d", app);
        for (const char* side : {"official", "cracked"}) {
            const fs::path dir = root / id / side;
            fs::create_directories(dir);
            fs::copy_file(fixtures / "corpus" / id / side / "manifest.xml", dir / "manifest.xml",
                          fs::copy_options::overwrite_existing);
            const bool cracked = side[0] == 'c';
            for (const char* os : os_tags) {
                std::string csv = "timestamp,cpu_percent,ram_mib\n";
                const int n = 5 + static_cast<int>(rng() % 10);
                for (int i = 0; i < n; ++i) {
                    const double cpu = (cracked ? 3.0 : 2.5) + (rng() % 200) / 100.0;
                    const double ram = (cracked ? 42.0 : 40.0) + (rng() % 500) / 100.0;
                    char line[64];
                    std::snprintf(line, sizeof line, "%d,%.2f,%.2f\n", i, cpu, ram);
                    csv += line;
                }
                write_text(dir / (std::string("telemetry-") + os + ".csv"), csv);

                PcapWriter w;
                const Endpoint dev = v4(10, 0, 0, 2, 0);
                const int conns = 1 + static_cast<int>(rng() % (cracked ? 8 : 5));
                for (int c = 0; c < conns; ++c) {
                    Endpoint d = dev;
                    d.port = static_cast<std::uint16_t>(41000 + c);
                    const Endpoint r = v4(93, 184, 216, static_cast<std::uint8_t>(1 + c), rng() % 2 ? 80 : 443);
                    const std::uint32_t isn = static_cast<std::uint32_t>(rng());
                    w.segment({d, r, SYN, isn, 0, {}});
                    w.segment({r, d, SYN | ACK, 7, isn + 1, {}});
                    w.segment({d, r, ACK, isn + 1, 8, {}});
                    const std::string payload = r.port == 80 ? "GET /c HTTP/1.1\r\nHost: a\r\n\r\n" : "\x16\x03\x01";
                    w.segment({d, r, PSH | ACK, isn + 1, 8, payload});
                    w.segment({d, r, FIN | ACK, isn + 1 + static_cast<std::uint32_t>(payload.size()), 8, {}});
                }
                write_bytes(dir / (std::string("capture-") + os + ".pcap"), w.bytes());
            }
        }
    }
}

} // namespace testsupport
