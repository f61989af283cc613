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

#include "crackaudit/corpus.hpp"

#include "crackaudit/error.hpp"
#include "crackaudit/manifest.hpp"
#include "crackaudit/telemetry.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

namespace crackaudit {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path)
{
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw Error(ErrorKind::FileNotFound, "file not found: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

namespace {

std::vector<fs::path> sorted_entries(const fs::path& dir)
{
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

bool starts_with(const std::string& s, std::string_view prefix)
{
    return s.size() >= prefix.size() && std::string_view(s).substr(0, prefix.size()) == prefix;
}

// "telemetry-kitkat.csv" -> "kitkat"; "capture.pcap" -> "all"
std::string version_tag(const fs::path& p, std::string_view prefix)
{
    const std::string stem = p.stem().string();
    if (stem.size() > prefix.size() + 1 && starts_with(stem, prefix) && stem[prefix.size()] == '-') {
        return stem.substr(prefix.size() + 1);
    }
    return "all";
}

} // namespace

AppProfile load_profile(const fs::path& dir, std::string app_id, BuildKind build,
                        const AnalysisOptions& options, std::vector<std::string>& warnings)
{
    AppProfile profile;
    profile.app_id = std::move(app_id);
    profile.build = build;
    const std::string where = profile.app_id + "/" + std::string(to_string(build));

    std::optional<fs::path> manifest;
    for (const char* name : {"AndroidManifest.xml", "manifest.xml"}) {
        if (fs::is_regular_file(dir / name)) {
            manifest = dir / name;
            break;
        }
    }
    const auto entries = sorted_entries(dir);
    if (!manifest) {
        for (const auto& p : entries) {
            if (p.extension() == ".apk" && fs::is_regular_file(p)) {
                manifest = p;
                break;
            }
        }
    }
    if (!manifest) {
        throw Error(ErrorKind::FileNotFound, where + ": no manifest or APK found in " + dir.string());
    }
    const auto doc = load_manifest(read_file(*manifest));
    profile.package_name = doc.package_name;
    profile.permissions = extract_permissions(doc, options.scoring.catalog);

    bool warned_device = false;
    for (const auto& p : entries) {
        const std::string name = p.filename().string();
        if (starts_with(name, "telemetry") && p.extension() == ".csv") {
            const auto bytes = read_file(p);
            const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
            const auto samples = parse_telemetry_csv(text, options.cores);
            profile.usage_by_version.push_back(aggregate(samples, version_tag(p, "telemetry")));
        } else if (starts_with(name, "capture") && p.extension() == ".pcap") {
            if (!options.device) {
                if (!warned_device) {
                    warnings.push_back(where + ": captures ignored, no --device given");
                    warned_device = true;
                }
                continue;
            }
            const auto capture = parse_capture(read_file(p));
            if (capture.truncation) warnings.push_back(where + "/" + name + ": " + capture.truncation->what());
            const auto flows = track_flows(capture.records, *options.device);
            profile.ports_by_version.push_back(
                {version_tag(p, "capture"), count_ports(flows, options.count_mode, options.http_mode)});
        }
    }
    // Duplicate tags are caught here rather than at report time.
    if (!profile.usage_by_version.empty()) (void)spread_across_versions(profile.usage_by_version);
    return profile;
}

CorpusResult analyze_corpus(const fs::path& root, const AnalysisOptions& options)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw Error(ErrorKind::FileNotFound, "corpus directory not found: " + root.string());
    }
    std::vector<fs::path> apps;
    for (const auto& p : sorted_entries(root)) {
        if (fs::is_directory(p)) apps.push_back(p);
    }

    struct Slot {
        std::optional<ScoredPair> pair;
        std::vector<std::string> warnings;
        std::exception_ptr error;
    };
    std::vector<Slot> slots(apps.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < apps.size(); i = next++) {
            auto& slot = slots[i];
            const std::string id = apps[i].filename().string();
            try {
                const auto off_dir = apps[i] / "official";
                const auto crk_dir = apps[i] / "cracked";
                if (!fs::is_directory(off_dir) || !fs::is_directory(crk_dir)) {
                    slot.warnings.push_back(id + ": skipped, needs both official/ and cracked/");
                    continue;
                }
                auto official = load_profile(off_dir, id, BuildKind::Official, options, slot.warnings);
                auto cracked = load_profile(crk_dir, id, BuildKind::Cracked, options, slot.warnings);
                auto pair = build_pair(official, cracked, options.scoring.weights,
                                       options.scoring.catalog, options.scoring.thresholds);
                if (pair.package_mismatch()) {
                    slot.warnings.push_back(id + ": package names differ (official '" +
                                            official.package_name + "', cracked '" +
                                            cracked.package_name + "')");
                }
                slot.pair = std::move(pair);
            } catch (...) {
                slot.error = std::current_exception();
            }
        }
    };

    const unsigned jobs = std::clamp<unsigned>(options.jobs, 1u, 64u);
    if (jobs == 1 || apps.size() < 2) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < std::min<std::size_t>(jobs, apps.size()); ++j) pool.emplace_back(worker);
    }

    CorpusResult result;
    for (auto& slot : slots) {
        if (slot.error) std::rethrow_exception(slot.error);
        for (auto& w : slot.warnings) result.warnings.push_back(std::move(w));
        if (slot.pair) result.pairs.push_back(std::move(*slot.pair));
    }
    return result;
}

std::map<std::string, IntentionClass> parse_reference_classes(std::string_view text)
{
    std::map<std::string, IntentionClass> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string app;
        std::string label;
        if (!(fields >> app)) continue;
        std::string extra;
        if (!(fields >> label) || (fields >> extra)) {
            throw Error(ErrorKind::InvalidCatalog,
                        "reference line " + std::to_string(line_no) + ": expected '<app> <class>'");
        }
        auto c = parse_intention_class(label);
        if (!c) {
            throw Error(ErrorKind::InvalidCatalog,
                        "reference line " + std::to_string(line_no) + ": unknown class '" + label + "'");
        }
        out[app] = *c;
    }
    return out;
}

void attach_reference_classes(std::vector<ScoredPair>& pairs,
                              const std::map<std::string, IntentionClass>& reference)
{
    for (auto& p : pairs) {
        if (auto it = reference.find(p.app_id); it != reference.end()) p.reference = it->second;
    }
}

} // namespace crackaudit
