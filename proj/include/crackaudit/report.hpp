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

#include "crackaudit/permissions.hpp"
#include "crackaudit/scoring.hpp"
#include "crackaudit/telemetry.hpp"
#include "crackaudit/traffic.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crackaudit {

enum class BuildKind { Official, Cracked };

std::string_view to_string(BuildKind b) noexcept;

struct VersionPorts {
    std::string os_version;
    PortCounts counts;
};

/// Indicator tuple for one build of one app. Usage and port lists may be
/// empty; such indicators are reported as missing, never as zero.
struct AppProfile {
    std::string app_id;
    BuildKind build = BuildKind::Official;
    std::string package_name;
    PermissionVector permissions;
    std::vector<UsageSummary> usage_by_version;
    std::vector<VersionPorts> ports_by_version;

    std::optional<VersionSpread> usage() const;
    std::optional<Spread> tcp() const;
    std::optional<Spread> http() const;
    bool partial() const noexcept { return usage_by_version.empty() || ports_by_version.empty(); }
};

/// Cracked minus official; positive means the cracked build uses more.
struct IndicatorDeltas {
    std::optional<double> cpu;
    std::optional<double> ram;
    std::optional<double> tcp;
    std::optional<double> http;
};

struct ScoredPair {
    std::string app_id;
    AppProfile official;
    AppProfile cracked;
    PairVerdict verdict;
    IndicatorDeltas deltas;
    /// Externally supplied expected class, if any.
    std::optional<IntentionClass> reference;

    IntentionClass label() const noexcept { return verdict.label; }
    bool diverges() const noexcept { return reference && *reference != verdict.label; }
    bool package_mismatch() const noexcept
    {
        return official.package_name != cracked.package_name;
    }
};

/// Throws AppIdMismatch, SameBuildKind or CatalogMismatch.
ScoredPair build_pair(const AppProfile& official, const AppProfile& cracked,
                      const GroupWeights& weights, const PermissionCatalog& catalog,
                      const Thresholds& thresholds = {});

struct OverheadRow {
    std::size_t pairs = 0;
    std::optional<double> cpu;
    std::optional<double> ram;
    std::optional<double> tcp;
    std::optional<double> http;
};

/// Mean indicator deltas per intention class, indexed by IntentionClass.
struct OverheadTable {
    std::array<OverheadRow, kClassCount> rows{};

    const OverheadRow& operator[](IntentionClass c) const noexcept
    {
        return rows[static_cast<std::size_t>(c)];
    }
};

OverheadTable overhead_table(std::span<const ScoredPair> pairs);

struct SideMeans {
    double official = 0.0;
    double cracked = 0.0;
};

/// Averages of one indicator. `per_app` averages each app's across-version
/// mean; `per_cell` averages every (app, OS version) measurement.
struct IndicatorMeans {
    std::optional<SideMeans> per_app;
    std::optional<SideMeans> per_cell;
};

struct CorpusSummary {
    std::size_t pair_count = 0;
    SideMeans permissions;
    IndicatorMeans cpu;
    IndicatorMeans ram;
    IndicatorMeans tcp;
    IndicatorMeans http;
    std::array<std::size_t, kClassCount> class_histogram{};
    /// Share of pairs labelled malicious or rather malicious.
    double malicious_fraction = 0.0;
    std::vector<std::string> divergent_apps;
};

/// Throws EmptyCorpus.
CorpusSummary corpus_summary(std::span<const ScoredPair> pairs);

enum class ReportFormat { Json, Csv, Markdown };

std::optional<ReportFormat> parse_report_format(std::string_view text) noexcept;

/// Settings echoed into every report so a verdict can be traced back.
struct ReportConfig {
    const PermissionCatalog* catalog = &builtin_catalog();
    GroupWeights weights;
    Thresholds thresholds;
    CountMode count_mode = CountMode::Connections;
    HttpMode http_mode = HttpMode::Signature;
};

inline constexpr int kReportVersion = 1;

/// Deterministic rendering: sorted JSON keys, 2 decimals for percentages,
/// MiB and port counts, 1 decimal for scores, half-to-even rounding.
std::string render_report(const std::optional<CorpusSummary>& summary, const OverheadTable& table,
                          std::span<const ScoredPair> pairs, ReportFormat format,
                          const ReportConfig& config = {});

/// Markdown table with one column per class and one row per indicator.
std::string render_overhead_markdown(const OverheadTable& table);

nlohmann::json pair_to_json(const ScoredPair& pair, const PermissionCatalog& catalog);

enum class Indicator { Cpu, Ram, Tcp, Http };

std::string_view to_string(Indicator i) noexcept;

struct BoxplotSeries {
    std::string app_id;
    std::optional<Spread> official;
    std::optional<Spread> cracked;
};

/// Per-app series for one indicator, in pair order.
std::vector<BoxplotSeries> boxplot_series(std::span<const ScoredPair> pairs, Indicator indicator);

/// SVG 1.1 chart: per app, an official and a cracked box spanning the
/// across-version [min, max]; a degenerate spread becomes a tick mark.
/// Throws NoData when no series carries a spread.
std::string render_boxplot(std::span<const BoxplotSeries> series, Indicator indicator);

/// Round half to even at `decimals` places.
double round_half_even(double value, int decimals) noexcept;
/// Fixed-point text of round_half_even(value, decimals); never prints "-0".
std::string format_fixed(double value, int decimals);

} // namespace crackaudit
