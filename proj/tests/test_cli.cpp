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

#include "crackaudit/cli.hpp"

#include "support/corpus_builder.hpp"
#include "support/packet_builder.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kFixtures = CRACKAUDIT_FIXTURES;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result audit(std::vector<std::string> args)
{
    args.insert(args.begin(), "audit");
    std::ostringstream out, err;
    const int code = crackaudit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& rel) { return (kFixtures / rel).string(); }

} // namespace

TEST_CASE("manifest subcommand")
{
    auto r = audit({"manifest", fx("apk/minimal.apk")});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["bits"][0] == 1);
    CHECK(j["bits"].size() == 16);
    CHECK(j["permissions"][0]["name"] == "android.permission.INTERNET");

    auto m = audit({"manifest", fx("axml/mixed_elements.axml"), "--emit-manifest"});
    REQUIRE(m.code == 0);
    auto mj = json::parse(m.out);
    CHECK(mj["source"] == "axml");
    CHECK(mj["permissions"].size() == 4);

    auto bad = audit({"manifest", fx("apk/no_manifest.apk")});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("ManifestMissing") != std::string::npos);
}

TEST_CASE("score subcommand")
{
    auto r = audit({"score", "--official", fx("corpus/02/official/manifest.xml"), "--cracked",
                    fx("corpus/02/cracked/manifest.xml"), "--app", "02"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["app"] == "02");
    CHECK(j["score"] == -0.3);
    CHECK(j["label"] == "l2");
    CHECK(j["deltas"] == json::array({-1, 1, 0}));

    auto w = audit({"score", "--official", fx("corpus/02/official/manifest.xml"), "--cracked",
                    fx("corpus/02/cracked/manifest.xml"), "--weights", "0,1,0"});
    REQUIRE(w.code == 0);
    CHECK(json::parse(w.out)["label"] == "l4");

    auto bad_w = audit({"score", "--official", fx("corpus/02/official/manifest.xml"), "--cracked",
                        fx("corpus/02/cracked/manifest.xml"), "--weights", "1,1,1"});
    CHECK(bad_w.code == 1);
    CHECK(bad_w.err.find("InvalidWeights") != std::string::npos);

    // Different packages score but warn.
    auto mm = audit({"score", "--official", fx("corpus/01/official/manifest.xml"), "--cracked",
                     fx("corpus/02/cracked/manifest.xml")});
    CHECK(mm.code == 0);
    CHECK(mm.err.find("package names differ") != std::string::npos);
}

TEST_CASE("pcap subcommand")
{
    auto missing = audit({"pcap", "missing.pcap", "--device", "10.0.0.2"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("file not found") != std::string::npos);

    const fs::path tmp = fs::temp_directory_path() / ("crackaudit-cli-" + std::to_string(::getpid()) + ".pcap");
    using namespace testsupport;
    PcapWriter w;
    const auto d = v4(10, 0, 0, 2, 40000);
    const auto r = v4(1, 2, 3, 4, 80);
    w.segment({d, r, SYN, 1, 0, {}});
    w.segment({d, r, PSH | ACK, 2, 0, "GET / HTTP/1.1\r\n\r\n"});
    write_bytes(tmp, w.bytes());

    auto ok = audit({"pcap", tmp.string(), "--device", "10.0.0.2"});
    REQUIRE(ok.code == 0);
    auto j = json::parse(ok.out);
    CHECK(j["t"] == 1);
    CHECK(j["h"] == 1);
    CHECK(j["flows"][0]["remote"] == "1.2.3.4");

    CHECK(audit({"pcap", tmp.string(), "--device", "nonsense"}).code == 1);
    CHECK(audit({"pcap", tmp.string()}).code == 2);
    CHECK(audit({"pcap", tmp.string(), "--device", "10.0.0.2", "--count-mode", "bogus"}).code == 2);
    fs::remove(tmp);
}

TEST_CASE("telemetry subcommand")
{
    const fs::path dir = fs::temp_directory_path() / ("crackaudit-tel-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    testsupport::write_text(dir / "telemetry-kitkat.csv", "timestamp,cpu_percent,ram_mib\n0,4,40\n");
    testsupport::write_text(dir / "telemetry-lollipop.csv", "timestamp,cpu_percent,ram_mib\n0,2,44\n1,2,44\n");
    testsupport::write_text(dir / "empty.csv", "timestamp,cpu_percent,ram_mib\n");

    auto r = audit({"telemetry", (dir / "telemetry-kitkat.csv").string(), (dir / "telemetry-lollipop.csv").string()});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["summaries"][0]["os"] == "kitkat");
    CHECK(j["spread"]["cpu_percent"]["mean"] == 3.0);

    auto e = audit({"telemetry", (dir / "empty.csv").string()});
    CHECK(e.code == 1);
    CHECK(e.err.find("NoSamples") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("corpus subcommand")
{
    const fs::path dir = fs::temp_directory_path() / ("crackaudit-cor-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    testsupport::build_rich_corpus(kFixtures, dir / "tree", 3);

    auto r = audit({"corpus", (dir / "tree").string(), "--device", "10.0.0.2", "--format", "csv", "--emit-svg",
                    (dir / "svg").string(), "--out", (dir / "report.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::file_size(dir / "report.csv") > 0);
    for (const char* name : {"cpu.svg", "ram.svg", "tcp.svg", "http.svg"}) CHECK(fs::exists(dir / "svg" / name));

    auto md = audit({"corpus", fx("corpus"), "--format", "markdown", "--reference", fx("corpus/reference-classes.txt")});
    REQUIRE(md.code == 0);
    CHECK(md.out.find("Divergences from reference classes") != std::string::npos);

    CHECK(audit({"corpus", fx("corpus"), "--format", "xml"}).code == 2);
    CHECK(audit({}).code == 2);
    CHECK(audit({"--help"}).code == 0);
    fs::remove_all(dir);
}
