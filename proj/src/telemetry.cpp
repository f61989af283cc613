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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace crackaudit {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_double(std::string_view text, double& out)
{
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

} // namespace

std::vector<UsageSample> parse_telemetry_csv(std::string_view text, unsigned cores)
{
    std::vector<UsageSample> out;
    std::size_t line_no = 0;
    bool header_seen = false;
    const double cpu_limit = 100.0 * std::max(1u, cores);

    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const auto line = trim(text.substr(start, nl == std::string_view::npos ? nl : nl - start));
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (line.empty()) continue;

        const auto fields = split(line, ',');
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "timestamp" || fields[1] != "cpu_percent" ||
                fields[2] != "ram_mib") {
                throw Error(ErrorKind::MissingHeader,
                            "telemetry CSV must start with 'timestamp,cpu_percent,ram_mib'");
            }
            header_seen = true;
            continue;
        }
        UsageSample s;
        if (fields.size() != 3 || !parse_double(fields[0], s.timestamp) ||
            !parse_double(fields[1], s.cpu) || !parse_double(fields[2], s.ram)) {
            throw Error(ErrorKind::RowError,
                        "line " + std::to_string(line_no) + ": expected three numeric fields",
                        line_no);
        }
        if (s.cpu < 0.0 || s.cpu > cpu_limit || s.ram < 0.0) {
            throw Error(ErrorKind::RowError,
                        "line " + std::to_string(line_no) + ": value out of range", line_no);
        }
        out.push_back(s);
    }
    if (!header_seen) {
        throw Error(ErrorKind::MissingHeader, "telemetry CSV has no header row");
    }
    return out;
}

UsageSummary aggregate(std::span<const UsageSample> samples, std::string os_version)
{
    if (samples.empty()) {
        throw Error(ErrorKind::NoSamples, "no telemetry samples for '" + os_version + "'");
    }
    UsageSummary s;
    s.os_version = std::move(os_version);
    s.sample_count = samples.size();
    double cpu = 0.0;
    double ram = 0.0;
    for (const auto& x : samples) {
        cpu += x.cpu;
        ram += x.ram;
    }
    s.cpu_mean = cpu / static_cast<double>(samples.size());
    s.ram_mean = ram / static_cast<double>(samples.size());
    return s;
}

Spread spread_of(std::span<const double> values)
{
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "no values to summarise");
    Spread s{values.front(), values.front(), 0.0};
    double sum = 0.0;
    for (double v : values) {
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
        sum += v;
    }
    // Clamp: rounding in the sum must not push the mean outside [min, max].
    s.mean = std::clamp(sum / static_cast<double>(values.size()), s.min, s.max);
    return s;
}

VersionSpread spread_across_versions(std::span<const UsageSummary> summaries)
{
    if (summaries.empty()) throw Error(ErrorKind::EmptyInput, "no OS-version summaries");
    std::set<std::string> tags;
    VersionSpread out;
    std::vector<double> cpu;
    std::vector<double> ram;
    for (const auto& s : summaries) {
        if (!tags.insert(s.os_version).second) {
            throw Error(ErrorKind::DuplicateVersionTag,
                        "OS version '" + s.os_version + "' appears more than once");
        }
        out.versions.push_back(s.os_version);
        cpu.push_back(s.cpu_mean);
        ram.push_back(s.ram_mean);
    }
    out.cpu = spread_of(cpu);
    out.ram = spread_of(ram);
    return out;
}

} // namespace crackaudit
