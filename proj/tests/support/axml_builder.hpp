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

// Minimal binary-XML writer for tests. Independent of the library decoder;
// it emits UTF-8 or UTF-16 string pools and can leave out the namespace
// chunk so that attributes carry a literal "android:name".

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace testsupport {

struct AxmlAttr {
    std::string ns;  // empty for none
    std::string name;
    std::string value;
    std::uint32_t resource_id = 0;
};

struct AxmlElement {
    std::string name;
    std::vector<AxmlAttr> attrs;
    std::vector<AxmlElement> children;
};

class AxmlWriter {
public:
    bool utf8 = true;
    bool emit_namespace = true;

    std::vector<std::uint8_t> write(const AxmlElement& root)
    {
        strings_.clear();
        index_.clear();
        ids_.clear();
        collect_ids(root);
        for (auto& [id, name] : ids_) (void)intern(name);
        if (emit_namespace) {
            (void)intern("android");
            (void)intern(kNs);
        }
        collect(root);

        std::vector<std::uint8_t> body;
        append(body, string_pool());
        append(body, resource_map());
        if (emit_namespace) append(body, ns_chunk(0x0100));
        element(body, root);
        if (emit_namespace) append(body, ns_chunk(0x0101));

        std::vector<std::uint8_t> out;
        u16(out, 0x0003);
        u16(out, 8);
        u32(out, static_cast<std::uint32_t>(8 + body.size()));
        append(out, body);
        return out;
    }

    static constexpr const char* kNs = "http://schemas.android.com/apk/res/android";

private:
    std::vector<std::string> strings_;
    std::map<std::string, std::uint32_t> index_;
    std::vector<std::pair<std::uint32_t, std::string>> ids_;

    static void u16(std::vector<std::uint8_t>& b, std::uint32_t v)
    {
        b.push_back(static_cast<std::uint8_t>(v));
        b.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    static void u32(std::vector<std::uint8_t>& b, std::uint32_t v)
    {
        u16(b, v & 0xffff);
        u16(b, v >> 16);
    }
    static void append(std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b)
    {
        a.insert(a.end(), b.begin(), b.end());
    }

    std::uint32_t intern(const std::string& s)
    {
        auto it = index_.find(s);
        if (it != index_.end()) return it->second;
        const auto i = static_cast<std::uint32_t>(strings_.size());
        strings_.push_back(s);
        index_[s] = i;
        return i;
    }

    // Attribute names with resource ids must come first in the pool.
    void collect_ids(const AxmlElement& e)
    {
        for (const auto& a : e.attrs) {
            if (a.resource_id == 0) continue;
            bool seen = false;
            for (auto& [id, n] : ids_) seen = seen || n == a.name;
            if (!seen) ids_.emplace_back(a.resource_id, a.name);
        }
        for (const auto& c : e.children) collect_ids(c);
    }

    void collect(const AxmlElement& e)
    {
        (void)intern(e.name);
        for (const auto& a : e.attrs) {
            (void)intern(a.name);
            (void)intern(a.value);
            if (!a.ns.empty()) (void)intern(a.ns);
        }
        for (const auto& c : e.children) collect(c);
    }

    std::vector<std::uint8_t> string_pool() const
    {
        std::vector<std::uint8_t> data;
        std::vector<std::uint32_t> offsets;
        for (const auto& s : strings_) {
            offsets.push_back(static_cast<std::uint32_t>(data.size()));
            if (utf8) {
                data.push_back(static_cast<std::uint8_t>(s.size()));  // ASCII only: chars == bytes
                data.push_back(static_cast<std::uint8_t>(s.size()));
                data.insert(data.end(), s.begin(), s.end());
                data.push_back(0);
            } else {
                u16(data, static_cast<std::uint32_t>(s.size()));
                for (char c : s) u16(data, static_cast<std::uint8_t>(c));
                u16(data, 0);
            }
        }
        while (data.size() % 4) data.push_back(0);

        const std::uint32_t header = 28;
        const std::uint32_t start = header + 4 * static_cast<std::uint32_t>(offsets.size());
        std::vector<std::uint8_t> c;
        u16(c, 0x0001);
        u16(c, header);
        u32(c, start + static_cast<std::uint32_t>(data.size()));
        u32(c, static_cast<std::uint32_t>(strings_.size()));
        u32(c, 0);
        u32(c, utf8 ? 0x100 : 0);
        u32(c, start);
        u32(c, 0);
        for (auto o : offsets) u32(c, o);
        append(c, data);
        return c;
    }

    std::vector<std::uint8_t> resource_map() const
    {
        std::vector<std::uint8_t> c;
        u16(c, 0x0180);
        u16(c, 8);
        u32(c, static_cast<std::uint32_t>(8 + 4 * ids_.size()));
        for (auto& [id, n] : ids_) u32(c, id);
        return c;
    }

    std::vector<std::uint8_t> ns_chunk(std::uint32_t type)
    {
        std::vector<std::uint8_t> c;
        u16(c, type);
        u16(c, 16);
        u32(c, 24);
        u32(c, 1);
        u32(c, 0xffffffffu);
        u32(c, intern("android"));
        u32(c, intern(kNs));
        return c;
    }

    void element(std::vector<std::uint8_t>& out, const AxmlElement& e)
    {
        std::vector<std::uint8_t> c;
        const auto count = static_cast<std::uint32_t>(e.attrs.size());
        u16(c, 0x0102);
        u16(c, 16);
        u32(c, 36 + 20 * count);
        u32(c, 1);
        u32(c, 0xffffffffu);
        u32(c, 0xffffffffu);
        u32(c, intern(e.name));
        u16(c, 20);
        u16(c, 20);
        u16(c, count);
        u16(c, 0);
        u16(c, 0);
        u16(c, 0);
        for (const auto& a : e.attrs) {
            u32(c, a.ns.empty() ? 0xffffffffu : intern(a.ns));
            u32(c, intern(a.name));
            u32(c, intern(a.value));
            u16(c, 8);
            c.push_back(0);
            c.push_back(0x03);
            u32(c, intern(a.value));
        }
        append(out, c);
        for (const auto& child : e.children) element(out, child);

        std::vector<std::uint8_t> end;
        u16(end, 0x0103);
        u16(end, 16);
        u32(end, 24);
        u32(end, 1);
        u32(end, 0xffffffffu);
        u32(end, 0xffffffffu);
        u32(end, intern(e.name));
        append(out, end);
    }
};

// A manifest root with one uses-permission child per name.
inline AxmlElement manifest_element(const std::string& package, const std::vector<std::string>& perms,
                                    bool namespaced = true)
{
    AxmlElement root{"manifest", {{"", "package", package, 0}}, {}};
    for (const auto& p : perms) {
        AxmlAttr a = namespaced ? AxmlAttr{AxmlWriter::kNs, "name", p, 0x01010003}
                                : AxmlAttr{"", "android:name", p, 0};
        root.children.push_back({"uses-permission", {a}, {}});
    }
    return root;
}

} // namespace testsupport
