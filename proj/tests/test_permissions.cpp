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

#include "crackaudit/permissions.hpp"

#include "crackaudit/error.hpp"

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

using namespace crackaudit;

TEST_CASE("builtin catalog entries")
{
    const auto& c = builtin_catalog();
    REQUIRE(c.size() == 16);

    const auto& first = c.entry(1);
    CHECK(first.name == "android.permission.INTERNET");
    CHECK(first.protection == Protection::Normal);
    CHECK(first.group == 1);

    const auto& ninth = c.entry(9);
    CHECK(ninth.name == "android.permission.MEDIA_CONTENT_CONTROL");
    CHECK(ninth.protection == Protection::Special);
    CHECK(ninth.group == 3);
}

TEST_CASE("builtin groups partition the catalog")
{
    const auto& c = builtin_catalog();
    std::set<int> seen;
    std::size_t total = 0;
    for (int g = 1; g <= 3; ++g) {
        for (int i : c.group_members(g)) {
            CHECK(seen.insert(i).second);
            CHECK(c.entry(i).group == g);
        }
        total += c.group_members(g).size();
    }
    CHECK(total == 16);
    CHECK(std::vector<int>(c.group_members(1).begin(), c.group_members(1).end()) ==
          std::vector<int>{1, 10, 11, 12, 13, 14, 15, 16});
    CHECK(std::vector<int>(c.group_members(2).begin(), c.group_members(2).end()) ==
          std::vector<int>{6, 7, 8});
    CHECK(std::vector<int>(c.group_members(3).begin(), c.group_members(3).end()) ==
          std::vector<int>{2, 3, 4, 5, 9});
}

TEST_CASE("protection levels")
{
    const auto& c = builtin_catalog();
    for (const auto& e : c.entries()) {
        if (e.index == 1 || e.index == 5 || e.index == 16) {
            CHECK(e.protection == Protection::Normal);
        } else if (e.index == 9) {
            CHECK(e.protection == Protection::Special);
        } else {
            CHECK(e.protection == Protection::Dangerous);
        }
    }
    CHECK(parse_protection("dangerous") == Protection::Dangerous);
    CHECK_FALSE(parse_protection("signature").has_value());
}

TEST_CASE("vector_from_names")
{
    const auto& c = builtin_catalog();
    SUBCASE("single hit")
    {
        std::vector<std::string> names = {"android.permission.INTERNET"};
        auto v = vector_from_names(names, c);
        CHECK(v.indices() == std::vector<int>{1});
        CHECK(v.untracked().empty());
    }
    SUBCASE("empty")
    {
        auto v = vector_from_names({}, c);
        CHECK(v.count() == 0);
        CHECK(v.size() == 16);
        CHECK(v.untracked().empty());
    }
    SUBCASE("one tracked, one untracked")
    {
        std::vector<std::string> names = {"android.permission.INTERNET", "android.permission.NFC"};
        auto v = vector_from_names(names, c);
        CHECK(v.indices() == std::vector<int>{1});
        CHECK(v.untracked() == std::vector<std::string>{"android.permission.NFC"});
    }
    SUBCASE("untracked names are sorted and unique")
    {
        std::vector<std::string> names = {"b.X", "a.Y", "b.X"};
        auto v = vector_from_names(names, c);
        CHECK(v.untracked() == std::vector<std::string>{"a.Y", "b.X"});
    }
}

TEST_CASE("catalog validation")
{
    using P = Protection;
    CHECK_THROWS_AS(PermissionCatalog({}), Error);
    try {
        PermissionCatalog({{1, "a", P::Normal, 1}, {2, "a", P::Normal, 2}});
        FAIL("duplicate name accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidCatalog);
    }
    CHECK_THROWS_AS(PermissionCatalog({{1, "a", P::Normal, 4}}), Error);
    CHECK_THROWS_AS(PermissionCatalog({{2, "a", P::Normal, 1}}), Error);

    PermissionCatalog small({{1, "a", P::Normal, 1}, {2, "b", P::Dangerous, 3}});
    CHECK(small.group_members(2).empty());
    CHECK(small.index_of("b") == 2);
    CHECK_FALSE(small == builtin_catalog());
}

TEST_CASE("weights validation")
{
    GroupWeights w;
    CHECK(w[0] == doctest::Approx(0.6));
    CHECK(w[1] == doctest::Approx(0.3));
    CHECK(w[2] == doctest::Approx(0.1));
    CHECK_NOTHROW(GroupWeights({1.0, 0.0, 0.0}));
    try {
        GroupWeights({0.5, 0.5, 0.5});
        FAIL("bad sum accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidWeights);
    }
    CHECK_THROWS_AS(GroupWeights({1.2, -0.1, -0.1}), Error);
}

TEST_CASE("vector index bounds")
{
    PermissionVector v(builtin_catalog());
    CHECK_THROWS(v.set(0));
    CHECK_THROWS(v.set(17));
    v.set(16);
    CHECK(v.test(16));
    v.set(16, false);
    CHECK(v.count() == 0);
}
