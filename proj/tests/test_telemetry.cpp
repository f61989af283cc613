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

#include "crackaudit/telemetry.hpp"

#include "crackaudit/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace crackaudit;

TEST_CASE("parse_telemetry_csv")
{
    auto two = parse_telemetry_csv("timestamp,cpu_percent,ram_mib\n0,2.0,40\n1,4.0,44\n");
    REQUIRE(two.size() == 2);
    CHECK(two[1].cpu == 4.0);
    CHECK(two[1].ram == 44.0);

    CHECK(parse_telemetry_csv("timestamp,cpu_percent,ram_mib\n").empty());
    CHECK(parse_telemetry_csv("timestamp,cpu_percent,ram_mib\r\n\r\n0,1,2\r\n").size() == 1);

    try {
        parse_telemetry_csv("timestamp,cpu_percent,ram_mib\nx,y,z\n");
        FAIL("bad row accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RowError);
        CHECK(e.line() == 2);
    }
    try {
        parse_telemetry_csv("time,cpu,ram\n0,1,2\n");
        FAIL("bad header accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingHeader);
    }
    CHECK_THROWS_AS(parse_telemetry_csv(""), Error);
    CHECK_THROWS_AS(parse_telemetry_csv("timestamp,cpu_percent,ram_mib\n0,101,2\n"), Error);
    CHECK(parse_telemetry_csv("timestamp,cpu_percent,ram_mib\n0,350,2\n", 4).size() == 1);
    CHECK_THROWS_AS(parse_telemetry_csv("timestamp,cpu_percent,ram_mib\n0,5,-1\n"), Error);
    CHECK_THROWS_AS(parse_telemetry_csv("timestamp,cpu_percent,ram_mib\n0,5\n"), Error);
}

TEST_CASE("aggregate")
{
    std::vector<UsageSample> s = {{0, 2.0, 40}, {1, 4.0, 44}};
    auto a = aggregate(s, "kitkat");
    CHECK(a.cpu_mean == doctest::Approx(3.0));
    CHECK(a.ram_mean == doctest::Approx(42.0));
    CHECK(a.sample_count == 2);
    CHECK(a.os_version == "kitkat");

    std::vector<UsageSample> one = {{0, 7.5, 12}};
    CHECK(aggregate(one, "x").cpu_mean == 7.5);

    try {
        aggregate({}, "x");
        FAIL("empty accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSamples);
    }
}

TEST_CASE("spread_across_versions")
{
    std::vector<UsageSummary> v = {{"kitkat", 4, 10, 1}, {"lollipop", 3, 20, 1}, {"marshmallow", 2, 30, 1}};
    auto s = spread_across_versions(v);
    CHECK(s.cpu.min == 2);
    CHECK(s.cpu.max == 4);
    CHECK(s.cpu.mean == doctest::Approx(3));
    CHECK(s.ram.mean == doctest::Approx(20));
    CHECK(s.versions == std::vector<std::string>{"kitkat", "lollipop", "marshmallow"});

    std::vector<UsageSummary> single = {{"kitkat", 4, 10, 1}};
    auto one = spread_across_versions(single);
    CHECK(one.cpu.min == one.cpu.max);
    CHECK(one.cpu.mean == one.cpu.max);

    std::vector<UsageSummary> dup = {{"kitkat", 4, 10, 1}, {"kitkat", 3, 10, 1}};
    try {
        spread_across_versions(dup);
        FAIL("duplicate accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateVersionTag);
    }
    CHECK_THROWS_AS(spread_across_versions({}), Error);
}

TEST_CASE("aggregation properties")
{
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> cpu(0.0, 100.0);
    std::uniform_real_distribution<double> ram(0.0, 4096.0);
    for (int n = 0; n < 500; ++n) {
        const int count = 1 + static_cast<int>(rng() % 60);
        std::vector<UsageSample> s;
        for (int i = 0; i < count; ++i) s.push_back({double(i), cpu(rng), ram(rng)});
        const auto base = aggregate(s, "v");

        auto shuffled = s;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto perm = aggregate(shuffled, "v");
        CHECK(perm.cpu_mean == doctest::Approx(base.cpu_mean).epsilon(1e-12));
        CHECK(perm.ram_mean == doctest::Approx(base.ram_mean).epsilon(1e-12));

        const double k = 0.25 + (rng() % 100) / 25.0;
        auto scaled = s;
        for (auto& x : scaled) {
            x.cpu *= k;
            x.ram *= k;
        }
        const auto sc = aggregate(scaled, "v");
        CHECK(sc.cpu_mean == doctest::Approx(k * base.cpu_mean).epsilon(1e-12));
        CHECK(sc.ram_mean == doctest::Approx(k * base.ram_mean).epsilon(1e-12));

        std::vector<double> values;
        for (const auto& x : s) values.push_back(x.cpu);
        const auto sp = spread_of(values);
        CHECK(sp.min <= sp.mean);
        CHECK(sp.mean <= sp.max);
        CHECK(sp.min == *std::min_element(values.begin(), values.end()));
        CHECK(sp.max == *std::max_element(values.begin(), values.end()));
    }
    // Identical values must not drift outside [min, max].
    std::vector<double> same(7, 0.1);
    const auto sp = spread_of(same);
    CHECK(sp.mean >= sp.min);
    CHECK(sp.mean <= sp.max);
}
