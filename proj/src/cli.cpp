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

#include "crackaudit/config.hpp"
#include "crackaudit/corpus.hpp"
#include "crackaudit/error.hpp"
#include "crackaudit/manifest.hpp"
#include "crackaudit/report.hpp"
#include "crackaudit/telemetry.hpp"
#include "crackaudit/traffic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace crackaudit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string weights;
    std::string thresholds;
    std::string catalog_file;
    std::string out_path;
    std::string device;
    std::string count_mode = "connections";
    std::string http_mode = "signature";
    std::string format = "json";
    std::string svg_dir;
    std::string reference_file;
    unsigned cores = 1;
    unsigned jobs = 1;
    bool emit_manifest = false;

    std::vector<std::string> inputs;
    std::vector<std::string> os_tags;
    std::string official;
    std::string cracked;
    std::string app_id;
};

std::string as_text(const std::vector<std::uint8_t>& bytes)
{
    return std::string(bytes.begin(), bytes.end());
}

ScoringConfig scoring_config(const Options& o)
{
    ScoringConfig cfg;
    if (!o.catalog_file.empty()) cfg = parse_scoring_config(as_text(read_file(o.catalog_file)));
    if (!o.weights.empty()) cfg.weights = parse_weights(o.weights);
    if (!o.thresholds.empty()) cfg.thresholds = parse_thresholds(o.thresholds);
    return cfg;
}

CountMode count_mode(const Options& o)
{
    return o.count_mode == "distinct-local-ports" ? CountMode::DistinctLocalPorts
                                                  : CountMode::Connections;
}

HttpMode http_mode(const Options& o)
{
    return o.http_mode == "port80" ? HttpMode::Port80 : HttpMode::Signature;
}

ReportConfig report_config(const ScoringConfig& cfg, const Options& o)
{
    ReportConfig rc;
    rc.catalog = &cfg.catalog;
    rc.weights = cfg.weights;
    rc.thresholds = cfg.thresholds;
    rc.count_mode = count_mode(o);
    rc.http_mode = http_mode(o);
    return rc;
}

void emit(const std::string& text, const Options& o, std::ostream& out)
{
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text)) throw Error(ErrorKind::IoError, "cannot write " + o.out_path);
}

int cmd_manifest(const Options& o, std::ostream& out)
{
    const auto cfg = scoring_config(o);
    const auto doc = load_manifest(read_file(o.inputs.front()));
    json j;
    if (o.emit_manifest) {
        j = {{"package", doc.package_name},
             {"permissions", doc.uses_permissions},
             {"source", to_string(doc.source_kind)}};
    } else {
        const auto v = extract_permissions(doc, cfg.catalog);
        json bits = json::array();
        json tracked = json::array();
        for (const auto& e : cfg.catalog.entries()) {
            bits.push_back(v.test(e.index) ? 1 : 0);
            if (v.test(e.index)) {
                tracked.push_back({{"index", e.index},
                                   {"name", e.name},
                                   {"protection", to_string(e.protection)},
                                   {"group", e.group}});
            }
        }
        j = {{"package", doc.package_name},
             {"source", to_string(doc.source_kind)},
             {"bits", bits},
             {"permissions", tracked},
             {"untracked", v.untracked()}};
    }
    emit(j.dump(2) + "\n", o, out);
    return 0;
}

int cmd_pcap(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto device = IpAddress::parse(o.device);
    const auto capture = parse_capture(read_file(o.inputs.front()));
    if (capture.truncation) err << "warning: " << capture.truncation->what() << '\n';
    const auto flows = track_flows(capture.records, device);
    const auto counts = count_ports(flows, count_mode(o), http_mode(o));

    json list = json::array();
    for (const auto& f : flows.flows) {
        if (!f.initiated_by_device) continue;
        list.push_back({{"remote", f.key.remote.to_string()},
                        {"remote_port", f.key.remote_port},
                        {"http", counts_as_http(f, http_mode(o))}});
    }
    json j = {{"device", device.to_string()},
              {"t", counts.t},
              {"h", counts.h},
              {"flows", list},
              {"packets", capture.records.size()},
              {"truncated", capture.truncation ? json(capture.truncation->what()) : json(nullptr)}};
    emit(j.dump(2) + "\n", o, out);
    return 0;
}

int cmd_telemetry(const Options& o, std::ostream& out)
{
    if (!o.os_tags.empty() && o.os_tags.size() != o.inputs.size()) {
        throw CLI::ValidationError("--os", "give one --os tag per input file");
    }
    std::vector<UsageSummary> summaries;
    for (std::size_t i = 0; i < o.inputs.size(); ++i) {
        const fs::path path = o.inputs[i];
        std::string tag = o.os_tags.empty() ? path.stem().string() : o.os_tags[i];
        if (o.os_tags.empty() && tag.rfind("telemetry-", 0) == 0) tag = tag.substr(10);
        const auto samples = parse_telemetry_csv(as_text(read_file(path)), o.cores);
        summaries.push_back(aggregate(samples, tag));
    }
    const auto spread = spread_across_versions(summaries);
    auto spread_json = [](const Spread& s) {
        return json{{"min", round_half_even(s.min, 2)},
                    {"max", round_half_even(s.max, 2)},
                    {"mean", round_half_even(s.mean, 2)}};
    };
    json list = json::array();
    for (const auto& s : summaries) {
        list.push_back({{"os", s.os_version},
                        {"cpu_percent", round_half_even(s.cpu_mean, 2)},
                        {"ram_mib", round_half_even(s.ram_mean, 2)},
                        {"samples", s.sample_count}});
    }
    json j = {{"summaries", list},
              {"spread", {{"cpu_percent", spread_json(spread.cpu)}, {"ram_mib", spread_json(spread.ram)}}}};
    emit(j.dump(2) + "\n", o, out);
    return 0;
}

AnalysisOptions analysis_options(const Options& o)
{
    AnalysisOptions a;
    a.scoring = scoring_config(o);
    a.count_mode = count_mode(o);
    a.http_mode = http_mode(o);
    if (!o.device.empty()) a.device = IpAddress::parse(o.device);
    a.cores = o.cores;
    a.jobs = o.jobs;
    return a;
}

AppProfile load_side(const std::string& path, const std::string& app, BuildKind build,
                     const AnalysisOptions& a, std::ostream& err)
{
    if (fs::is_directory(path)) {
        std::vector<std::string> warnings;
        auto p = load_profile(path, app, build, a, warnings);
        for (const auto& w : warnings) err << "warning: " << w << '\n';
        return p;
    }
    const auto doc = load_manifest(read_file(path));
    AppProfile p;
    p.app_id = app;
    p.build = build;
    p.package_name = doc.package_name;
    p.permissions = extract_permissions(doc, a.scoring.catalog);
    return p;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto a = analysis_options(o);
    const std::string app = o.app_id.empty() ? "app" : o.app_id;
    const auto official = load_side(o.official, app, BuildKind::Official, a, err);
    const auto cracked = load_side(o.cracked, app, BuildKind::Cracked, a, err);
    const auto pair = build_pair(official, cracked, a.scoring.weights, a.scoring.catalog,
                                 a.scoring.thresholds);
    if (pair.package_mismatch()) {
        err << "warning: package names differ (official '" << official.package_name
            << "', cracked '" << cracked.package_name << "')\n";
    }
    emit(pair_to_json(pair, a.scoring.catalog).dump(2) + "\n", o, out);
    return 0;
}

int cmd_corpus(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto format = parse_report_format(o.format);
    const auto a = analysis_options(o);
    auto result = analyze_corpus(o.inputs.front(), a);
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    if (!o.reference_file.empty()) {
        attach_reference_classes(result.pairs,
                                 parse_reference_classes(as_text(read_file(o.reference_file))));
    }

    std::optional<CorpusSummary> summary;
    if (!result.pairs.empty()) summary = corpus_summary(result.pairs);
    const auto table = overhead_table(result.pairs);
    const auto rc = report_config(a.scoring, o);
    emit(render_report(summary, table, result.pairs, *format, rc), o, out);

    if (!o.svg_dir.empty()) {
        fs::create_directories(o.svg_dir);
        for (auto ind : {Indicator::Cpu, Indicator::Ram, Indicator::Tcp, Indicator::Http}) {
            const auto series = boxplot_series(result.pairs, ind);
            try {
                const auto svg = render_boxplot(series, ind);
                const auto path = fs::path(o.svg_dir) / (std::string(to_string(ind)) + ".svg");
                std::ofstream f(path, std::ios::binary | std::ios::trunc);
                if (!f || !(f << svg)) throw Error(ErrorKind::IoError, "cannot write " + path.string());
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NoData) throw;
                err << "warning: " << e.what() << ", no chart written\n";
            }
        }
    }
    return 0;
}

void add_scoring_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--weights", o.weights, "Group weights w1,w2,w3 (non-negative, sum 1)");
    cmd->add_option("--thresholds", o.thresholds, "Class boundaries a,b (default -0.4,0.4)");
    cmd->add_option("--catalog", o.catalog_file, "Catalog/weights override file")
        ->check(CLI::ExistingFile);
}

void add_traffic_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--count-mode", o.count_mode, "How opened TCP connections are counted")
        ->check(CLI::IsMember({"connections", "distinct-local-ports"}));
    cmd->add_option("--http-mode", o.http_mode, "How HTTP connections are recognised")
        ->check(CLI::IsMember({"signature", "port80"}));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Compare official and cracked Android builds and score the cracked one's intent",
                 args.empty() ? "audit" : args.front()};
    app.require_subcommand(1);

    auto* manifest = app.add_subcommand("manifest", "Extract requested permissions from an APK or manifest");
    manifest->add_option("input", o.inputs, "APK, binary AndroidManifest.xml or textual manifest")
        ->required()
        ->expected(1);
    manifest->add_flag("--emit-manifest", o.emit_manifest, "Print the parsed manifest document instead");
    manifest->add_option("--catalog", o.catalog_file, "Catalog/weights override file")
        ->check(CLI::ExistingFile);

    auto* pcap = app.add_subcommand("pcap", "Count TCP and HTTP connections opened by a device");
    pcap->add_option("input", o.inputs, "Classic pcap capture")->required()->expected(1);
    pcap->add_option("--device", o.device, "Address of the analysed device")->required();
    add_traffic_flags(pcap, o);

    auto* telemetry = app.add_subcommand("telemetry", "Summarise CPU/RAM sample logs per OS version");
    telemetry->add_option("inputs", o.inputs, "telemetry-<os>.csv files")->required();
    telemetry->add_option("--os", o.os_tags, "OS version tag per input (default: from file name)");
    telemetry->add_option("--cores", o.cores, "Core count bounding CPU percentages")
        ->check(CLI::Range(1u, 1024u));

    auto* score = app.add_subcommand("score", "Score one official/cracked pair");
    score->add_option("--official", o.official, "Official manifest, APK or build directory")->required();
    score->add_option("--cracked", o.cracked, "Cracked manifest, APK or build directory")->required();
    score->add_option("--app", o.app_id, "App id recorded in the output");
    score->add_option("--device", o.device, "Device address for captures in build directories");
    score->add_option("--cores", o.cores, "Core count bounding CPU percentages")
        ->check(CLI::Range(1u, 1024u));
    add_scoring_flags(score, o);
    add_traffic_flags(score, o);

    auto* corpus = app.add_subcommand("corpus", "Score every <app>/{official,cracked} pair under a directory");
    corpus->add_option("root", o.inputs, "Corpus root directory")->required()->expected(1);
    corpus->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    corpus->add_option("--emit-svg", o.svg_dir, "Write cpu/ram/tcp/http box plots into this directory");
    corpus->add_option("--reference", o.reference_file, "Expected classes, one '<app> <class>' per line");
    corpus->add_option("--device", o.device, "Device address for captures");
    corpus->add_option("--cores", o.cores, "Core count bounding CPU percentages")
        ->check(CLI::Range(1u, 1024u));
    corpus->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 64u));
    add_scoring_flags(corpus, o);
    add_traffic_flags(corpus, o);

    for (auto* cmd : {manifest, pcap, telemetry, score, corpus}) {
        cmd->add_option("--out", o.out_path, "Write output here instead of standard output");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        // Validate overrides before touching any input.
        if (!o.weights.empty()) (void)parse_weights(o.weights);
        if (!o.thresholds.empty()) (void)parse_thresholds(o.thresholds);

        if (manifest->parsed()) return cmd_manifest(o, out);
        if (pcap->parsed()) return cmd_pcap(o, out, err);
        if (telemetry->parsed()) return cmd_telemetry(o, out);
        if (score->parsed()) return cmd_score(o, out, err);
        return cmd_corpus(o, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace crackaudit::cli
