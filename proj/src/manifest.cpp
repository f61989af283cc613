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

#include "crackaudit/manifest.hpp"

#include "crackaudit/error.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace crackaudit {

std::string_view to_string(SourceKind kind) noexcept
{
    switch (kind) {
    case SourceKind::ApkContainer: return "apk";
    case SourceKind::BinaryXml: return "axml";
    case SourceKind::TextXml: return "xml";
    }
    return "xml";
}

namespace {

namespace pt = boost::property_tree;

using Namespaces = std::map<std::string, std::string, std::less<>>;

void add_unique(std::vector<std::string>& list, std::string value)
{
    if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(std::move(value));
}

// Extends `scope` with the xmlns:prefix declarations carried by `attrs`.
Namespaces with_declarations(const Namespaces& scope, const pt::ptree* attrs)
{
    Namespaces out = scope;
    if (!attrs) return out;
    for (const auto& [key, value] : *attrs) {
        if (key.rfind("xmlns:", 0) == 0) out[key.substr(6)] = value.data();
    }
    return out;
}

bool names_android_name(std::string_view attr, const Namespaces& ns)
{
    const auto colon = attr.find(':');
    if (colon == std::string_view::npos || attr.substr(colon + 1) != "name") return false;
    const auto prefix = attr.substr(0, colon);
    if (auto it = ns.find(prefix); it != ns.end()) return it->second == kAndroidNamespace;
    // Undeclared prefix: accept the literal spelling only.
    return attr == "android:name";
}

void collect(const pt::ptree& node, const Namespaces& scope, ManifestDocument& doc)
{
    for (const auto& [tag, child] : node) {
        if (tag == "<xmlattr>" || tag == "<xmlcomment>" || tag == "<xmltext>") continue;
        const auto attrs = child.get_child_optional("<xmlattr>");
        const Namespaces ns = with_declarations(scope, attrs ? &*attrs : nullptr);
        if ((tag == "uses-permission" || tag == "uses-permission-sdk-23") && attrs) {
            for (const auto& [key, value] : *attrs) {
                if (names_android_name(key, ns) && !value.data().empty()) {
                    add_unique(doc.uses_permissions, value.data());
                    break;
                }
            }
        }
        collect(child, ns, doc);
    }
}

} // namespace

ManifestDocument parse_textual_manifest(std::string_view text)
{
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_xml(in, tree, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
        throw Error(ErrorKind::XmlSyntaxError, std::string("malformed XML: ") + e.message() +
                                                   " (line " + std::to_string(e.line()) + ")");
    }

    const pt::ptree* root = nullptr;
    std::string root_name;
    for (const auto& [tag, child] : tree) {
        if (tag.empty() || tag.front() == '<') continue;
        if (root) {
            throw Error(ErrorKind::XmlSyntaxError, "document has more than one root element");
        }
        root = &child;
        root_name = tag;
    }
    if (!root) throw Error(ErrorKind::XmlSyntaxError, "document has no root element");
    if (root_name != "manifest") {
        throw Error(ErrorKind::RootElementNotManifest,
                    "root element is <" + root_name + ">, expected <manifest>");
    }

    ManifestDocument doc;
    doc.source_kind = SourceKind::TextXml;
    const auto attrs = root->get_child_optional("<xmlattr>");
    const Namespaces ns = with_declarations({}, attrs ? &*attrs : nullptr);
    if (attrs) doc.package_name = attrs->get<std::string>("package", "");
    collect(*root, ns, doc);
    return doc;
}

ManifestDocument open_apk(std::span<const std::uint8_t> bytes)
{
    const ZipArchive zip(bytes);
    const auto entry = zip.find("AndroidManifest.xml");
    if (!entry) {
        throw Error(ErrorKind::ManifestMissing, "archive has no AndroidManifest.xml entry");
    }
    const auto data = zip.read(*entry);
    ManifestDocument doc = parse_axml(data);
    doc.source_kind = SourceKind::ApkContainer;
    return doc;
}

ManifestDocument load_manifest(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() >= 4 && bytes[0] == 'P' && bytes[1] == 'K') return open_apk(bytes);
    if (bytes.size() >= 2 && bytes[0] == 0x03 && bytes[1] == 0x00) return parse_axml(bytes);
    return parse_textual_manifest(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

PermissionVector extract_permissions(const ManifestDocument& doc,
                                     const PermissionCatalog& catalog)
{
    return vector_from_names(doc.uses_permissions, catalog);
}

} // namespace crackaudit
