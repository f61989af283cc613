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

#include "crackaudit/config.hpp"
#include "crackaudit/report.hpp"
#include "crackaudit/traffic.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crackaudit {

struct AnalysisOptions {
    ScoringConfig scoring;
    CountMode count_mode = CountMode::Connections;
    HttpMode http_mode = HttpMode::Signature;
    std::optional<IpAddress> device;
    unsigned cores = 1;
    unsigned jobs = 1;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Loads one build directory:
///
///     AndroidManifest.xml | manifest.xml | *.apk   (first match, required)
///     telemetry-<os>.csv                           (any number)
///     capture.pcap | capture-<os>.pcap             (any number; needs a device)
///
/// Recoverable problems (truncated captures, ignored captures) are appended
/// to `warnings`.
AppProfile load_profile(const std::filesystem::path& dir, std::string app_id, BuildKind build,
                        const AnalysisOptions& options, std::vector<std::string>& warnings);

struct CorpusResult {
    std::vector<ScoredPair> pairs;  // sorted by app id
    std::vector<std::string> warnings;
};

/// Scores every `<root>/<app>/{official,cracked}` pair. The directory name is
/// the pairing key. Work fans out over `options.jobs` threads; output order
/// does not depend on scheduling.
CorpusResult analyze_corpus(const std::filesystem::path& root, const AnalysisOptions& options);

/// Lines of `<app> <class>`; `#` comments. Throws InvalidCatalog on bad lines.
std::map<std::string, IntentionClass> parse_reference_classes(std::string_view text);

void attach_reference_classes(std::vector<ScoredPair>& pairs,
                              const std::map<std::string, IntentionClass>& reference);

} // namespace crackaudit
