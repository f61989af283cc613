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

#include "crackaudit/config.hpp"

#include "crackaudit/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace crackaudit {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<double> parse_numbers(std::string_view text, ErrorKind kind, const char* what)
{
    std::vector<double> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        const auto field = trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
        double v = 0.0;
        const auto* end = field.data() + field.size();
        auto [ptr, ec] = std::from_chars(field.data(), end, v);
        if (field.empty() || ec != std::errc{} || ptr != end) {
            throw Error(kind, std::string("cannot parse ") + what + " '" + std::string(text) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

GroupWeights parse_weights(std::string_view text)
{
    const auto v = parse_numbers(text, ErrorKind::InvalidWeights, "weights");
    if (v.size() != kGroupCount) {
        throw Error(ErrorKind::InvalidWeights,
                    "expected " + std::to_string(kGroupCount) + " comma-separated weights");
    }
    return GroupWeights({v[0], v[1], v[2]});
}

Thresholds parse_thresholds(std::string_view text)
{
    const auto v = parse_numbers(text, ErrorKind::InvalidWeights, "thresholds");
    if (v.size() != 2) throw Error(ErrorKind::InvalidWeights, "expected two comma-separated thresholds");
    return Thresholds(v[0], v[1]);
}

ScoringConfig parse_scoring_config(std::string_view text)
{
    ScoringConfig cfg;
    std::vector<PermissionEntry> entries;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::InvalidCatalog,
                        "config line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "weights") {
            cfg.weights = parse_weights(value);
        } else if (key == "thresholds") {
            cfg.thresholds = parse_thresholds(value);
        } else if (key == "permission") {
            std::istringstream fields{std::string(value)};
            PermissionEntry e;
            std::string protection;
            std::string extra;
            if (!(fields >> e.index >> e.name >> protection >> e.group) || (fields >> extra)) {
                throw Error(ErrorKind::InvalidCatalog,
                            "config line " + std::to_string(line_no) +
                                ": expected 'permission = <index> <name> <protection> <group>'");
            }
            auto p = parse_protection(protection);
            if (!p) {
                throw Error(ErrorKind::InvalidCatalog, "config line " + std::to_string(line_no) +
                                                           ": unknown protection '" + protection + "'");
            }
            e.protection = *p;
            entries.push_back(std::move(e));
        } else {
            throw Error(ErrorKind::InvalidCatalog, "config line " + std::to_string(line_no) +
                                                       ": unknown key '" + std::string(key) + "'");
        }
    }
    if (!entries.empty()) {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.index < b.index; });
        cfg.catalog = PermissionCatalog(std::move(entries));
    }
    return cfg;
}

} // namespace crackaudit
