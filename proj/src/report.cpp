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

#include "crackaudit/report.hpp"

#include "crackaudit/error.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace crackaudit {

using nlohmann::json;

std::string_view to_string(BuildKind b) noexcept
{
    return b == BuildKind::Official ? "official" : "cracked";
}

std::string_view to_string(Indicator i) noexcept
{
    switch (i) {
    case Indicator::Cpu: return "cpu";
    case Indicator::Ram: return "ram";
    case Indicator::Tcp: return "tcp";
    case Indicator::Http: return "http";
    }
    return "cpu";
}

std::optional<ReportFormat> parse_report_format(std::string_view text) noexcept
{
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "markdown" || text == "md") return ReportFormat::Markdown;
    return std::nullopt;
}

double round_half_even(double value, int decimals) noexcept
{
    const double scale = std::pow(10.0, decimals);
    // nearbyint honours the default FE_TONEAREST mode: ties go to even.
    const double r = std::nearbyint(value * scale) / scale;
    return r + 0.0;  // folds -0 into +0
}

std::string format_fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, round_half_even(value, decimals));
    std::string s = buf;
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

// --- profiles and pairs ---------------------------------------------------

std::optional<VersionSpread> AppProfile::usage() const
{
    if (usage_by_version.empty()) return std::nullopt;
    return spread_across_versions(usage_by_version);
}

namespace {

std::optional<Spread> port_spread(const std::vector<VersionPorts>& ports, bool http)
{
    if (ports.empty()) return std::nullopt;
    std::vector<double> values;
    for (const auto& p : ports) values.push_back(static_cast<double>(http ? p.counts.h : p.counts.t));
    return spread_of(values);
}

std::optional<double> difference(const std::optional<double>& cracked,
                                 const std::optional<double>& official)
{
    if (!cracked || !official) return std::nullopt;
    return *cracked - *official;
}

std::optional<double> mean_of(const std::vector<double>& v)
{
    if (v.empty()) return std::nullopt;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

} // namespace

std::optional<Spread> AppProfile::tcp() const { return port_spread(ports_by_version, false); }
std::optional<Spread> AppProfile::http() const { return port_spread(ports_by_version, true); }

ScoredPair build_pair(const AppProfile& official, const AppProfile& cracked,
                      const GroupWeights& weights, const PermissionCatalog& catalog,
                      const Thresholds& thresholds)
{
    if (official.app_id != cracked.app_id) {
        throw Error(ErrorKind::AppIdMismatch,
                    "cannot pair '" + official.app_id + "' with '" + cracked.app_id + "'");
    }
    if (official.build != BuildKind::Official || cracked.build != BuildKind::Cracked) {
        throw Error(ErrorKind::SameBuildKind,
                    official.app_id + ": a pair needs one official and one cracked build");
    }

    ScoredPair p;
    p.app_id = official.app_id;
    p.official = official;
    p.cracked = cracked;
    p.verdict = score_pair(official.permissions, cracked.permissions, weights, catalog, thresholds);

    auto mean_cpu = [](const AppProfile& a) -> std::optional<double> {
        if (auto u = a.usage()) return u->cpu.mean;
        return std::nullopt;
    };
    auto mean_ram = [](const AppProfile& a) -> std::optional<double> {
        if (auto u = a.usage()) return u->ram.mean;
        return std::nullopt;
    };
    auto mean_tcp = [](const AppProfile& a) -> std::optional<double> {
        if (auto s = a.tcp()) return s->mean;
        return std::nullopt;
    };
    auto mean_http = [](const AppProfile& a) -> std::optional<double> {
        if (auto s = a.http()) return s->mean;
        return std::nullopt;
    };
    p.deltas.cpu = difference(mean_cpu(cracked), mean_cpu(official));
    p.deltas.ram = difference(mean_ram(cracked), mean_ram(official));
    p.deltas.tcp = difference(mean_tcp(cracked), mean_tcp(official));
    p.deltas.http = difference(mean_http(cracked), mean_http(official));
    return p;
}

OverheadTable overhead_table(std::span<const ScoredPair> pairs)
{
    struct Acc {
        std::vector<double> cpu, ram, tcp, http;
    };
    std::array<Acc, kClassCount> acc;
    OverheadTable table;
    for (const auto& p : pairs) {
        const auto c = static_cast<std::size_t>(p.label());
        ++table.rows[c].pairs;
        if (p.deltas.cpu) acc[c].cpu.push_back(*p.deltas.cpu);
        if (p.deltas.ram) acc[c].ram.push_back(*p.deltas.ram);
        if (p.deltas.tcp) acc[c].tcp.push_back(*p.deltas.tcp);
        if (p.deltas.http) acc[c].http.push_back(*p.deltas.http);
    }
    for (std::size_t c = 0; c < kClassCount; ++c) {
        table.rows[c].cpu = mean_of(acc[c].cpu);
        table.rows[c].ram = mean_of(acc[c].ram);
        table.rows[c].tcp = mean_of(acc[c].tcp);
        table.rows[c].http = mean_of(acc[c].http);
    }
    return table;
}

namespace {

// Collects per-app and per-cell values for one indicator on both sides.
struct SideValues {
    std::vector<double> app_official, app_cracked, cell_official, cell_cracked;

    IndicatorMeans means() const
    {
        IndicatorMeans m;
        auto ao = mean_of(app_official);
        auto ac = mean_of(app_cracked);
        if (ao && ac) m.per_app = SideMeans{*ao, *ac};
        auto co = mean_of(cell_official);
        auto cc = mean_of(cell_cracked);
        if (co && cc) m.per_cell = SideMeans{*co, *cc};
        return m;
    }
};

} // namespace

CorpusSummary corpus_summary(std::span<const ScoredPair> pairs)
{
    if (pairs.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no pairs");

    CorpusSummary s;
    s.pair_count = pairs.size();
    SideValues cpu, ram, tcp, http;
    std::size_t perm_official = 0;
    std::size_t perm_cracked = 0;

    for (const auto& p : pairs) {
        perm_official += p.official.permissions.count();
        perm_cracked += p.cracked.permissions.count();
        ++s.class_histogram[static_cast<std::size_t>(p.label())];
        if (p.diverges()) s.divergent_apps.push_back(p.app_id);

        for (const AppProfile* prof : {&p.official, &p.cracked}) {
            const bool off = prof->build == BuildKind::Official;
            if (auto u = prof->usage()) {
                (off ? cpu.app_official : cpu.app_cracked).push_back(u->cpu.mean);
                (off ? ram.app_official : ram.app_cracked).push_back(u->ram.mean);
            }
            for (const auto& v : prof->usage_by_version) {
                (off ? cpu.cell_official : cpu.cell_cracked).push_back(v.cpu_mean);
                (off ? ram.cell_official : ram.cell_cracked).push_back(v.ram_mean);
            }
            if (auto t = prof->tcp()) (off ? tcp.app_official : tcp.app_cracked).push_back(t->mean);
            if (auto h = prof->http()) (off ? http.app_official : http.app_cracked).push_back(h->mean);
            for (const auto& v : prof->ports_by_version) {
                (off ? tcp.cell_official : tcp.cell_cracked).push_back(static_cast<double>(v.counts.t));
                (off ? http.cell_official : http.cell_cracked).push_back(static_cast<double>(v.counts.h));
            }
        }
    }
    const auto n = static_cast<double>(pairs.size());
    s.permissions = {static_cast<double>(perm_official) / n, static_cast<double>(perm_cracked) / n};
    s.cpu = cpu.means();
    s.ram = ram.means();
    s.tcp = tcp.means();
    s.http = http.means();
    s.malicious_fraction =
        static_cast<double>(s.class_histogram[0] + s.class_histogram[1]) / n;
    return s;
}

// --- JSON -------------------------------------------------------------------

namespace {

constexpr int kValueDecimals = 2;
constexpr int kScoreDecimals = 1;

json number_or_null(const std::optional<double>& v, int decimals = kValueDecimals)
{
    return v ? json(round_half_even(*v, decimals)) : json(nullptr);
}

json side_means_json(const std::optional<SideMeans>& m)
{
    if (!m) return nullptr;
    return {{"official", round_half_even(m->official, kValueDecimals)},
            {"cracked", round_half_even(m->cracked, kValueDecimals)}};
}

json indicator_means_json(const IndicatorMeans& m)
{
    return {{"per_app", side_means_json(m.per_app)}, {"per_cell", side_means_json(m.per_cell)}};
}

json profile_json(const AppProfile& a)
{
    json usage = json::array();
    for (const auto& u : a.usage_by_version) {
        usage.push_back({{"os", u.os_version},
                         {"cpu_percent", round_half_even(u.cpu_mean, kValueDecimals)},
                         {"ram_mib", round_half_even(u.ram_mean, kValueDecimals)},
                         {"samples", u.sample_count}});
    }
    json ports = json::array();
    for (const auto& p : a.ports_by_version) {
        ports.push_back({{"os", p.os_version}, {"t", p.counts.t}, {"h", p.counts.h}});
    }
    return {{"package", a.package_name},
            {"permissions", a.permissions.indices()},
            {"untracked", a.permissions.untracked()},
            {"partial", a.partial()},
            {"usage", usage},
            {"ports", ports}};
}

json config_json(const ReportConfig& c)
{
    char fp[17];
    std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(c.catalog->fingerprint()));
    return {{"weights", c.weights.values()},
            {"thresholds", {c.thresholds.malicious_below(), c.thresholds.benign_above()}},
            {"count_mode", c.count_mode == CountMode::Connections ? "connections" : "distinct-local-ports"},
            {"http_mode", c.http_mode == HttpMode::Signature ? "signature" : "port80"},
            {"catalog", {{"size", c.catalog->size()}, {"fingerprint", fp}}}};
}

json overhead_json(const OverheadTable& t)
{
    json out = json::object();
    for (std::size_t c = 0; c < kClassCount; ++c) {
        const auto& r = t.rows[c];
        const auto name = std::string(to_string(static_cast<IntentionClass>(c)));
        if (r.pairs == 0) {
            out[name] = nullptr;
            continue;
        }
        out[name] = {{"pairs", r.pairs},
                     {"cpu_percent", number_or_null(r.cpu)},
                     {"ram_mib", number_or_null(r.ram)},
                     {"tcp", number_or_null(r.tcp)},
                     {"http", number_or_null(r.http)}};
    }
    return out;
}

json summary_json(const CorpusSummary& s)
{
    json hist = json::object();
    for (std::size_t c = 0; c < kClassCount; ++c) {
        hist[std::string(to_string(static_cast<IntentionClass>(c)))] = s.class_histogram[c];
    }
    return {{"pairs", s.pair_count},
            {"mean_permissions",
             {{"official", round_half_even(s.permissions.official, kValueDecimals)},
              {"cracked", round_half_even(s.permissions.cracked, kValueDecimals)}}},
            {"cpu_percent", indicator_means_json(s.cpu)},
            {"ram_mib", indicator_means_json(s.ram)},
            {"tcp", indicator_means_json(s.tcp)},
            {"http", indicator_means_json(s.http)},
            {"class_histogram", hist},
            {"malicious_or_rather_malicious_fraction",
             round_half_even(s.malicious_fraction, kValueDecimals)},
            {"divergent_apps", s.divergent_apps}};
}

} // namespace

json pair_to_json(const ScoredPair& p, const PermissionCatalog& catalog)
{
    json differing = json::object();
    for (std::size_t l = 0; l < kGroupCount; ++l) {
        json names = json::array();
        for (int j : p.verdict.differing[l]) names.push_back(catalog.entry(j).name);
        differing["group" + std::to_string(l + 1)] = names;
    }
    const auto& d = p.verdict.score.deltas.delta;
    return {{"app", p.app_id},
            {"deltas", {d[0], d[1], d[2]}},
            {"score", round_half_even(p.verdict.score.value, kScoreDecimals)},
            {"class", to_string(p.label())},
            {"label", short_label(p.label())},
            {"differing_permissions", differing},
            {"indicator_deltas",
             {{"cpu_percent", number_or_null(p.deltas.cpu)},
              {"ram_mib", number_or_null(p.deltas.ram)},
              {"tcp", number_or_null(p.deltas.tcp)},
              {"http", number_or_null(p.deltas.http)}}},
            {"official", profile_json(p.official)},
            {"cracked", profile_json(p.cracked)},
            {"package_mismatch", p.package_mismatch()},
            {"reference_class", p.reference ? json(short_label(*p.reference)) : json(nullptr)},
            {"diverges", p.diverges()}};
}

// --- text renderers -----------------------------------------------------------

namespace {

std::string cell(const std::optional<double>& v, int decimals = kValueDecimals)
{
    return v ? format_fixed(*v, decimals) : std::string();
}

std::string render_csv(std::span<const ScoredPair> pairs)
{
    std::ostringstream out;
    out << "app,class,score,d1,d2,d3,dcpu,dram,dtcp,dhttp\n";
    for (const auto& p : pairs) {
        const auto& d = p.verdict.score.deltas.delta;
        out << p.app_id << ',' << short_label(p.label()) << ','
            << format_fixed(p.verdict.score.value, kScoreDecimals) << ',' << d[0] << ',' << d[1]
            << ',' << d[2] << ',' << cell(p.deltas.cpu) << ',' << cell(p.deltas.ram) << ','
            << cell(p.deltas.tcp) << ',' << cell(p.deltas.http) << '\n';
    }
    return out.str();
}

std::string md_or_na(const std::optional<double>& v)
{
    return v ? format_fixed(*v, kValueDecimals) : std::string("n/a");
}

std::string md_side(const std::optional<SideMeans>& m)
{
    if (!m) return "n/a";
    return "official " + format_fixed(m->official, kValueDecimals) + ", cracked " +
           format_fixed(m->cracked, kValueDecimals);
}

std::string render_markdown(const std::optional<CorpusSummary>& summary, const OverheadTable& table,
                            std::span<const ScoredPair> pairs, const ReportConfig& config)
{
    std::ostringstream out;
    const auto& w = config.weights;
    out << "# Cracked application audit\n\n";
    out << "Weights " << format_fixed(w[0], 2) << " / " << format_fixed(w[1], 2) << " / "
        << format_fixed(w[2], 2) << "; thresholds " << format_fixed(config.thresholds.malicious_below(), 2)
        << " / " << format_fixed(config.thresholds.benign_above(), 2) << "; counting "
        << (config.count_mode == CountMode::Connections ? "connections" : "distinct local ports")
        << "; HTTP by " << (config.http_mode == HttpMode::Signature ? "request-line signature" : "port 80")
        << ".\n\n";

    out << "## Pairs\n\n";
    if (pairs.empty()) {
        out << "No pairs.\n\n";
    } else {
        out << "| App | Class | Score | d1 | d2 | d3 | CPU (%) | RAM (MiB) | TCP | HTTP |\n";
        out << "|---|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
        for (const auto& p : pairs) {
            const auto& d = p.verdict.score.deltas.delta;
            out << "| " << p.app_id << " | " << to_string(p.label()) << " | "
                << format_fixed(p.verdict.score.value, kScoreDecimals) << " | " << d[0] << " | "
                << d[1] << " | " << d[2] << " | " << md_or_na(p.deltas.cpu) << " | "
                << md_or_na(p.deltas.ram) << " | " << md_or_na(p.deltas.tcp) << " | "
                << md_or_na(p.deltas.http) << " |\n";
        }
        out << '\n';
    }

    if (summary) {
        const auto& s = *summary;
        out << "## Summary\n\n";
        out << "- Pairs: " << s.pair_count << '\n';
        out << "- Mean requested permissions: official " << format_fixed(s.permissions.official, 2)
            << ", cracked " << format_fixed(s.permissions.cracked, 2) << '\n';
        out << "- CPU (%) per app: " << md_side(s.cpu.per_app) << "; per app and OS version: "
            << md_side(s.cpu.per_cell) << '\n';
        out << "- RAM (MiB) per app: " << md_side(s.ram.per_app) << "; per app and OS version: "
            << md_side(s.ram.per_cell) << '\n';
        out << "- TCP connections per app: " << md_side(s.tcp.per_app)
            << "; per app and OS version: " << md_side(s.tcp.per_cell) << '\n';
        out << "- HTTP connections per app: " << md_side(s.http.per_app)
            << "; per app and OS version: " << md_side(s.http.per_cell) << '\n';
        out << "- Classes:";
        for (std::size_t c = 0; c < kClassCount; ++c) {
            out << (c ? ", " : " ") << to_string(static_cast<IntentionClass>(c)) << ' '
                << s.class_histogram[c];
        }
        out << '\n';
        out << "- Malicious or rather malicious: " << format_fixed(100.0 * s.malicious_fraction, 2)
            << "%\n\n";
    }

    bool any_reference = false;
    for (const auto& p : pairs) any_reference = any_reference || p.reference.has_value();
    if (any_reference) {
        out << "## Divergences from reference classes\n\n";
        bool any = false;
        for (const auto& p : pairs) {
            if (!p.diverges()) continue;
            if (!any) {
                out << "| App | Score | Computed | Reference |\n|---|---:|---|---|\n";
                any = true;
            }
            out << "| " << p.app_id << " | " << format_fixed(p.verdict.score.value, kScoreDecimals)
                << " | " << to_string(p.label()) << " | " << to_string(*p.reference) << " |\n";
        }
        out << (any ? "\n" : "None.\n\n");
    }

    out << "## Average overhead per class\n\n" << render_overhead_markdown(table);
    return out.str();
}

} // namespace

std::string render_overhead_markdown(const OverheadTable& table)
{
    std::ostringstream out;
    out << "| | malicious | rather malicious | rather benign | benign |\n";
    out << "|---|---:|---:|---:|---:|\n";
    auto row = [&](const char* label, std::optional<double> OverheadRow::*field) {
        out << "| " << label;
        for (const auto& r : table.rows) {
            out << " | " << (r.pairs ? md_or_na(r.*field) : std::string("n/a"));
        }
        out << " |\n";
    };
    row("CPU (%)", &OverheadRow::cpu);
    row("RAM (MiB)", &OverheadRow::ram);
    row("TCP ports", &OverheadRow::tcp);
    row("HTTP ports", &OverheadRow::http);
    out << "| Pairs";
    for (const auto& r : table.rows) out << " | " << r.pairs;
    out << " |\n\nPositive values: the cracked build uses more than the official one.\n";
    return out.str();
}

std::string render_report(const std::optional<CorpusSummary>& summary, const OverheadTable& table,
                          std::span<const ScoredPair> pairs, ReportFormat format,
                          const ReportConfig& config)
{
    switch (format) {
    case ReportFormat::Csv: return render_csv(pairs);
    case ReportFormat::Markdown: return render_markdown(summary, table, pairs, config);
    case ReportFormat::Json: break;
    }
    json pairs_json = json::array();
    for (const auto& p : pairs) pairs_json.push_back(pair_to_json(p, *config.catalog));
    json doc = {{"report_version", kReportVersion},
                {"config", config_json(config)},
                {"pairs", pairs_json},
                {"summary", summary ? summary_json(*summary) : json(nullptr)},
                {"overhead", overhead_json(table)}};
    return doc.dump(2) + "\n";
}

} // namespace crackaudit
