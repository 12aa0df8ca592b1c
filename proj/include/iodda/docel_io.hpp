// Copyright 2026 The IODDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "iodda/csv.hpp"
#include "iodda/docel.hpp"

namespace iodda {

namespace detail {

inline std::string sanitize_file_stem(std::string_view name)
{
    std::string out;
    for (char c : name)
        if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-')
            out += c;
    return out.empty() ? "attr" : out;
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MissingFile, path.filename().string() + " not found", path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open for writing", path.string());
    out << content;
    if (!out) throw Error(ErrorCode::IoFailure, "write failed", path.string());
}

inline ValueKind infer_kind(const std::vector<std::string_view>& cells)
{
    bool numeric = true, boolean = true;
    for (auto c : cells) {
        if (c.empty()) continue;
        double v = 0;
        auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
        if (ec != std::errc() || ptr != c.data() + c.size() || !std::isfinite(v)) numeric = false;
        if (c != "True" && c != "False" && c != "true" && c != "false") boolean = false;
    }
    if (boolean) return ValueKind::Boolean;
    if (numeric) return ValueKind::Numeric;
    return ValueKind::Categorical;
}

struct CsvTable {
    std::string file;
    std::vector<std::string> header;
    std::vector<csv::Row> rows;

    std::size_t column(std::string_view name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw Error(ErrorCode::SchemaMismatch, "missing column '" + std::string(name) + "'", file);
    }
};

inline CsvTable load_table(const std::filesystem::path& dir, const std::string& file)
{
    CsvTable t;
    t.file = file;
    auto rows = csv::parse(read_file(dir / file), file);
    if (rows.empty()) throw Error(ErrorCode::SchemaMismatch, "missing header row", file);
    t.header = std::move(rows.front());
    rows.erase(rows.begin());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() == 1 && rows[i][0].empty()) continue; // blank line
        if (rows[i].size() != t.header.size())
            throw Error(ErrorCode::SchemaMismatch, "row has " + std::to_string(rows[i].size()) + " cells, header has " +
                                                       std::to_string(t.header.size()),
                        file + ":" + std::to_string(i + 2));
        t.rows.push_back(std::move(rows[i]));
    }
    return t;
}

inline void expect_columns(const CsvTable& t, std::vector<std::string> expected)
{
    std::multiset<std::string> have(t.header.begin(), t.header.end());
    std::multiset<std::string> want(expected.begin(), expected.end());
    if (have != want) {
        std::string msg = "columns do not match manifest; expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? "," : "") + expected[i];
        throw Error(ErrorCode::SchemaMismatch, msg, t.file);
    }
}

struct ManifestAttribute {
    std::string name;
    std::optional<ValueKind> kind;
    std::string object_type;
    std::string file;
};

inline std::optional<ValueKind> optional_kind(const nlohmann::json& j)
{
    if (!j.contains("kind")) return std::nullopt;
    return parse_kind(j.at("kind").get<std::string>());
}

} // namespace detail

inline std::string object_file_name(std::string_view type) { return "objects_" + detail::sanitize_file_stem(type) + ".csv"; }
inline std::string dynamic_file_name(std::string_view attribute)
{
    return "dynamic_" + detail::sanitize_file_stem(attribute) + ".csv";
}

/// Reads a DOCEL directory (manifest.json, events.csv, objects_<Type>.csv,
/// dynamic_<Attribute>.csv). The result is canonicalized and validated; the
/// first validation error aborts the parse.
inline DocelLog parse_docel(const std::filesystem::path& dir)
{
    using nlohmann::json;
    if (!std::filesystem::exists(dir / "events.csv"))
        throw Error(ErrorCode::MissingFile, "events.csv not found", (dir / "events.csv").string());
    json manifest;
    try {
        manifest = json::parse(detail::read_file(dir / "manifest.json"));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("manifest.json: ") + e.what(), "manifest.json");
    }

    DocelLog log;
    std::vector<Issue> warnings;
    std::map<std::pair<std::string, std::string>, bool> kind_declared; // (type, attr)
    std::vector<std::pair<std::string, std::string>> object_files;     // (type, file)
    std::vector<detail::ManifestAttribute> dynamics;

    try {
        if (!manifest.contains("object_types") || manifest.at("object_types").empty())
            throw Error(ErrorCode::SchemaMismatch, "manifest declares no object types", "manifest.json");
        for (const auto& jt : manifest.at("object_types")) {
            ObjectTypeSpec t;
            t.name = jt.at("name").get<std::string>();
            for (const auto& ja : jt.value("static_attributes", json::array())) {
                auto kind = detail::optional_kind(ja);
                AttributeSpec a{ja.at("name").get<std::string>(), kind.value_or(ValueKind::Categorical), false};
                kind_declared[{t.name, a.name}] = kind.has_value();
                t.attributes.push_back(a);
            }
            object_files.emplace_back(t.name, jt.value("file", object_file_name(t.name)));
            log.schema.object_types.push_back(std::move(t));
        }
        for (const auto& ja : manifest.value("dynamic_attributes", json::array())) {
            detail::ManifestAttribute m{ja.at("name").get<std::string>(), detail::optional_kind(ja),
                                        ja.at("object_type").get<std::string>(), {}};
            m.file = ja.value("file", dynamic_file_name(m.name));
            auto* type = const_cast<ObjectTypeSpec*>(log.schema.find_type(m.object_type));
            if (!type)
                throw Error(ErrorCode::SchemaMismatch, "dynamic attribute " + m.name + " owned by undeclared type " + m.object_type,
                            "manifest.json");
            type->attributes.push_back({m.name, m.kind.value_or(ValueKind::Categorical), true});
            kind_declared[{m.object_type, m.name}] = m.kind.has_value();
            dynamics.push_back(std::move(m));
        }
        for (const auto& ja : manifest.value("event_attributes", json::array())) {
            auto kind = detail::optional_kind(ja);
            log.schema.event_attributes.push_back({ja.at("name").get<std::string>(), kind.value_or(ValueKind::Text), false});
            kind_declared[{"", ja.at("name").get<std::string>()}] = kind.has_value();
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("manifest.json: ") + e.what(), "manifest.json");
    }

    auto resolve_kind = [&](AttributeSpec& spec, const std::string& type, const std::vector<std::string_view>& cells) {
        if (kind_declared[{type, spec.name}]) return;
        spec.kind = detail::infer_kind(cells);
        warnings.push_back({ErrorCode::SchemaMismatch,
                            "kind of " + spec.name + " not declared; inferred " + std::string(kind_name(spec.kind)),
                            "manifest.json"});
        kind_declared[{type, spec.name}] = true;
    };

    // Objects.
    for (std::size_t ti = 0; ti < log.schema.object_types.size(); ++ti) {
        auto& type = log.schema.object_types[ti];
        auto table = detail::load_table(dir, object_files[ti].second);
        std::vector<std::string> expected{"object_id"};
        for (const auto& a : type.attributes)
            if (!a.dynamic) expected.push_back(a.name);
        detail::expect_columns(table, expected);
        auto id_col = table.column("object_id");
        for (auto& a : type.attributes) {
            if (a.dynamic) continue;
            auto col = table.column(a.name);
            std::vector<std::string_view> cells;
            for (const auto& r : table.rows) cells.push_back(r[col]);
            resolve_kind(a, type.name, cells);
        }
        for (std::size_t ri = 0; ri < table.rows.size(); ++ri) {
            const auto& row = table.rows[ri];
            ObjectInstance o{row[id_col], type.name, {}};
            for (const auto& a : type.attributes) {
                if (a.dynamic) continue;
                const auto& cell = row[table.column(a.name)];
                if (cell.empty()) continue;
                try {
                    o.static_attributes.emplace(a.name, AttributeValue::parse(cell, a.kind));
                } catch (const Error& e) {
                    throw Error(e.code(), e.message(), table.file + ":" + std::to_string(ri + 2));
                }
            }
            log.objects.push_back(std::move(o));
        }
    }

    // Events.
    {
        auto table = detail::load_table(dir, "events.csv");
        std::vector<std::string> expected{"event_id", "activity", "timestamp"};
        for (const auto& t : log.schema.object_types) expected.push_back(t.name);
        for (const auto& a : log.schema.event_attributes) expected.push_back(a.name);
        detail::expect_columns(table, expected);
        auto id_col = table.column("event_id"), act_col = table.column("activity"), ts_col = table.column("timestamp");
        for (auto& a : log.schema.event_attributes) {
            auto col = table.column(a.name);
            std::vector<std::string_view> cells;
            for (const auto& r : table.rows) cells.push_back(r[col]);
            resolve_kind(a, "", cells);
        }
        for (std::size_t ri = 0; ri < table.rows.size(); ++ri) {
            const auto& row = table.rows[ri];
            const std::string where = "events.csv:" + std::to_string(ri + 2);
            Event e;
            e.id = row[id_col];
            e.activity = row[act_col];
            try {
                e.timestamp = parse_timestamp(row[ts_col]);
                for (const auto& t : log.schema.object_types) {
                    std::string_view cell = row[table.column(t.name)];
                    std::vector<ObjectId> ids;
                    while (!cell.empty()) {
                        auto semi = cell.find(';');
                        auto id = cell.substr(0, semi);
                        if (!id.empty()) ids.emplace_back(id);
                        if (semi == std::string_view::npos) break;
                        cell.remove_prefix(semi + 1);
                    }
                    if (!ids.empty()) e.objects.emplace(t.name, std::move(ids));
                }
                for (const auto& a : log.schema.event_attributes) {
                    const auto& cell = row[table.column(a.name)];
                    if (!cell.empty()) e.attributes.emplace(a.name, AttributeValue::parse(cell, a.kind));
                }
            } catch (const Error& err) {
                throw Error(err.code(), err.message(), where);
            }
            log.events.push_back(std::move(e));
        }
    }

    // Dynamic attribute records. Several types may share one attribute file.
    std::unordered_map<std::string, std::string> object_type_of;
    for (const auto& o : log.objects) object_type_of.emplace(o.id, o.type);
    std::set<std::string> loaded_files;
    for (const auto& m : dynamics) {
        if (!loaded_files.insert(m.file).second) continue;
        auto table = detail::load_table(dir, m.file);
        detail::expect_columns(table, {"record_id", "value", "event_id", "object_id"});
        auto rid = table.column("record_id"), val = table.column("value"), eid = table.column("event_id"),
             oid = table.column("object_id");
        for (auto& t : log.schema.object_types)
            for (auto& a : t.attributes)
                if (a.dynamic && a.name == m.name) {
                    std::vector<std::string_view> cells;
                    for (const auto& r : table.rows)
                        if (auto it = object_type_of.find(r[oid]); it != object_type_of.end() && it->second == t.name)
                            cells.push_back(r[val]);
                    resolve_kind(a, t.name, cells);
                }
        for (std::size_t ri = 0; ri < table.rows.size(); ++ri) {
            const auto& row = table.rows[ri];
            const std::string where = m.file + ":" + std::to_string(ri + 2);
            auto it = object_type_of.find(row[oid]);
            if (it == object_type_of.end())
                throw Error(ErrorCode::DanglingForeignKey, "unknown object id " + row[oid], where);
            const auto* spec = log.attribute_spec(it->second, m.name);
            if (!spec || !spec->dynamic)
                throw Error(ErrorCode::SchemaMismatch, m.name + " is not a dynamic attribute of " + it->second, where);
            try {
                log.dynamic_records.push_back(
                    {row[rid], m.name, AttributeValue::parse(row[val], spec->kind), row[eid], row[oid]});
            } catch (const Error& err) {
                throw Error(err.code(), err.message(), where);
            }
        }
    }

    log.load_warnings = std::move(warnings);
    log.canonicalize();
    auto report = validate_log(log);
    if (!report.ok()) {
        const auto& first = report.errors.front();
        throw Error(first.code, first.message, first.location);
    }
    return log;
}

/// Writes the log in the DOCEL directory format; the directory is created
/// if needed. Output is a pure function of the log contents.
inline void write_docel(const DocelLog& log, const std::filesystem::path& dir)
{
    using nlohmann::json;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create directory: " + ec.message(), dir.string());

    json manifest;
    manifest["format"] = "docel-csv";
    manifest["version"] = 1;
    manifest["object_types"] = json::array();
    manifest["dynamic_attributes"] = json::array();
    manifest["event_attributes"] = json::array();

    std::set<std::string> used_files;
    auto unique_file = [&](std::string file) {
        std::string stem = file.substr(0, file.size() - 4);
        for (int i = 2; used_files.count(file); ++i) file = stem + "_" + std::to_string(i) + ".csv";
        used_files.insert(file);
        return file;
    };

    std::map<std::string, std::string> dynamic_files; // attribute name -> file
    for (const auto& t : log.schema.object_types) {
        json jt;
        jt["name"] = t.name;
        jt["file"] = unique_file(object_file_name(t.name));
        jt["static_attributes"] = json::array();
        for (const auto& a : t.attributes) {
            if (a.dynamic) continue;
            jt["static_attributes"].push_back({{"name", a.name}, {"kind", kind_name(a.kind)}});
        }
        manifest["object_types"].push_back(jt);
    }
    for (const auto& t : log.schema.object_types)
        for (const auto& a : t.attributes) {
            if (!a.dynamic) continue;
            if (!dynamic_files.count(a.name)) dynamic_files[a.name] = unique_file(dynamic_file_name(a.name));
            manifest["dynamic_attributes"].push_back(
                {{"name", a.name}, {"object_type", t.name}, {"kind", kind_name(a.kind)}, {"file", dynamic_files[a.name]}});
        }
    for (const auto& a : log.schema.event_attributes)
        manifest["event_attributes"].push_back({{"name", a.name}, {"kind", kind_name(a.kind)}});
    detail::write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    {
        std::string out;
        csv::Row header{"event_id", "activity", "timestamp"};
        for (const auto& t : log.schema.object_types) header.push_back(t.name);
        for (const auto& a : log.schema.event_attributes) header.push_back(a.name);
        csv::append_row(out, header);
        for (const auto& e : log.events) {
            csv::Row row{e.id, e.activity, format_timestamp(e.timestamp)};
            for (const auto& t : log.schema.object_types) {
                std::string cell;
                if (auto it = e.objects.find(t.name); it != e.objects.end())
                    for (std::size_t i = 0; i < it->second.size(); ++i) cell += (i ? ";" : "") + it->second[i];
                row.push_back(std::move(cell));
            }
            for (const auto& a : log.schema.event_attributes) {
                auto it = e.attributes.find(a.name);
                row.push_back(it == e.attributes.end() ? std::string{} : it->second.to_string());
            }
            csv::append_row(out, row);
        }
        detail::write_file(dir / "events.csv", out);
    }

    for (std::size_t ti = 0; ti < log.schema.object_types.size(); ++ti) {
        const auto& t = log.schema.object_types[ti];
        std::string out;
        csv::Row header{"object_id"};
        for (const auto& a : t.attributes)
            if (!a.dynamic) header.push_back(a.name);
        csv::append_row(out, header);
        for (const auto& o : log.objects) {
            if (o.type != t.name) continue;
            csv::Row row{o.id};
            for (const auto& a : t.attributes) {
                if (a.dynamic) continue;
                auto it = o.static_attributes.find(a.name);
                row.push_back(it == o.static_attributes.end() ? std::string{} : it->second.to_string());
            }
            csv::append_row(out, row);
        }
        detail::write_file(dir / manifest["object_types"][ti]["file"].get<std::string>(), out);
    }

    for (const auto& [name, file] : dynamic_files) {
        std::string out;
        csv::append_row(out, {"record_id", "value", "event_id", "object_id"});
        for (const auto& r : log.dynamic_records)
            if (r.attribute == name) csv::append_row(out, {r.id, r.value.to_string(), r.event_id, r.object_id});
        detail::write_file(dir / file, out);
    }
}

} // namespace iodda
