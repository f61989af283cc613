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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crackaudit {

struct UsageSample {
    double timestamp = 0.0;  // seconds
    double cpu = 0.0;        // percent, up to 100 per core
    double ram = 0.0;        // MiB
};

/// Expects the header `timestamp,cpu_percent,ram_mib`. Blank lines are
/// skipped. Throws MissingHeader, or RowError carrying the 1-based line.
std::vector<UsageSample> parse_telemetry_csv(std::string_view text, unsigned cores = 1);

struct UsageSummary {
    std::string os_version;
    double cpu_mean = 0.0;
    double ram_mean = 0.0;
    std::size_t sample_count = 0;
};

/// Unweighted means. Throws NoSamples.
UsageSummary aggregate(std::span<const UsageSample> samples, std::string os_version);

struct Spread {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

/// min/max/mean of a non-empty list. Throws EmptyInput.
Spread spread_of(std::span<const double> values);

struct VersionSpread {
    Spread cpu;
    Spread ram;
    std::vector<std::string> versions;  // in input order
};

/// Throws EmptyInput or DuplicateVersionTag.
VersionSpread spread_across_versions(std::span<const UsageSummary> summaries);

} // namespace crackaudit
