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

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "iodda/error.hpp"
#include "iodda/time.hpp"
#include "iodda/value.hpp"

namespace iodda {

using ObjectId = std::string;
using EventIndex = std::size_t; ///< Position of an event in canonical log order.

struct AttributeSpec {
    std::string name;
    ValueKind kind = ValueKind::Categorical;
    bool dynamic = false;

    friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

struct ObjectTypeSpec {
    std::string name;
    std::vector<AttributeSpec> attributes; ///< static and dynamic, declaration order

    const AttributeSpec* find(std::string_view attribute) const
    {
        for (const auto& a : attributes)
            if (a.name == attribute) return &a;
        return nullptr;
    }

    friend bool operator==(const ObjectTypeSpec&, const ObjectTypeSpec&) = default;
};

struct Schema {
    std::vector<ObjectTypeSpec> object_types;
    std::vector<AttributeSpec> event_attributes;

    const ObjectTypeSpec* find_type(std::string_view name) const
    {
        for (const auto& t : object_types)
            if (t.name == name) return &t;
        return nullptr;
    }

    friend bool operator==(const Schema&, const Schema&) = default;
};

struct Event {
    std::string id;
    std::string activity;
    Timestamp timestamp{};
    std::map<std::string, std::vector<ObjectId>> objects; ///< object type -> ids
    std::map<std::string, AttributeValue> attributes;     ///< static event attributes

    bool references(std::string_view object_id) const
    {
        for (const auto& [type, ids] : objects)
            if (std::find(ids.begin(), ids.end(), object_id) != ids.end()) return true;
        return false;
    }

    std::size_t object_count() const
    {
        std::size_t n = 0;
        for (const auto& [type, ids] : objects) n += ids.size();
        return n;
    }

    friend bool operator==(const Event&, const Event&) = default;
};

struct ObjectInstance {
    ObjectId id;
    std::string type;
    std::map<std::string, AttributeValue> static_attributes;

    friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

struct DynamicAttributeRecord {
    std::string id;
    std::string attribute;
    AttributeValue value;
    std::string event_id;
    ObjectId object_id;

    friend bool operator==(const DynamicAttributeRecord&, const DynamicAttributeRecord&) = default;
};

struct Issue {
    ErrorCode code;
    std::string message;
    std::string location;
};

struct ValidationReport {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;

    bool ok() const noexcept { return errors.empty(); }
    bool has_error(ErrorCode code) const
    {
        return std::any_of(errors.begin(), errors.end(), [&](const Issue& i) { return i.code == code; });
    }
};

/// Data-aware object-centric event log. Fill the public members, then call
/// canonicalize() once; after that the log is treated as immutable and the
/// lookup helpers are valid.
class DocelLog {
public:
    Schema schema;
    std::vector<Event> events;
    std::vector<ObjectInstance> objects;
    std::vector<DynamicAttributeRecord> dynamic_records;
    std::vector<Issue> load_warnings; ///< e.g. inferred value kinds; not part of equality

    /// Orders each type's attributes statics-first, sorts events by (timestamp, event id), objects by (type, id), and
    /// dynamic records by (event position, attribute, object, record id);
    /// rebuilds lookup tables.
    void canonicalize()
    {
        for (auto& t : schema.object_types)
            std::stable_partition(t.attributes.begin(), t.attributes.end(),
                                  [](const AttributeSpec& a) { return !a.dynamic; });
        for (auto& e : events)
            for (auto& [type, ids] : e.objects) {
                std::sort(ids.begin(), ids.end());
                ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            }
        std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
            return std::tie(a.timestamp, a.id) < std::tie(b.timestamp, b.id);
        });
        std::sort(objects.begin(), objects.end(), [](const ObjectInstance& a, const ObjectInstance& b) {
            return std::tie(a.type, a.id) < std::tie(b.type, b.id);
        });
        rebuild_indices();
        auto pos = [&](const DynamicAttributeRecord& r) {
            auto p = event_index(r.event_id);
            return p ? *p : events.size();
        };
        std::stable_sort(dynamic_records.begin(), dynamic_records.end(),
                         [&](const DynamicAttributeRecord& a, const DynamicAttributeRecord& b) {
                             auto pa = pos(a), pb = pos(b);
                             return std::tie(pa, a.attribute, a.object_id, a.id) <
                                    std::tie(pb, b.attribute, b.object_id, b.id);
                         });
    }

    const ObjectInstance* find_object(std::string_view id) const
    {
        auto it = object_lookup_.find(std::string(id));
        return it == object_lookup_.end() ? nullptr : &objects[it->second];
    }

    std::optional<EventIndex> event_index(std::string_view id) const
    {
        auto it = event_lookup_.find(std::string(id));
        if (it == event_lookup_.end()) return std::nullopt;
        return it->second;
    }

    /// Event positions in which the object participates, in log order.
    const std::vector<EventIndex>& trace_of(std::string_view id) const
    {
        static const std::vector<EventIndex> empty;
        auto it = traces_.find(std::string(id));
        return it == traces_.end() ? empty : it->second;
    }

    std::size_t count_of_type(std::string_view type) const
    {
        return static_cast<std::size_t>(std::count_if(objects.begin(), objects.end(),
                                                      [&](const ObjectInstance& o) { return o.type == type; }));
    }

    const AttributeSpec* attribute_spec(std::string_view type, std::string_view attribute) const
    {
        const auto* t = schema.find_type(type);
        return t ? t->find(attribute) : nullptr;
    }

    std::set<std::string> activities() const
    {
        std::set<std::string> out;
        for (const auto& e : events) out.insert(e.activity);
        return out;
    }

    friend bool operator==(const DocelLog& a, const DocelLog& b)
    {
        return a.schema == b.schema && a.events == b.events && a.objects == b.objects &&
               a.dynamic_records == b.dynamic_records;
    }

private:
    void rebuild_indices()
    {
        event_lookup_.clear();
        object_lookup_.clear();
        traces_.clear();
        for (std::size_t i = 0; i < events.size(); ++i) event_lookup_.emplace(events[i].id, i);
        for (std::size_t i = 0; i < objects.size(); ++i) object_lookup_.emplace(objects[i].id, i);
        for (std::size_t i = 0; i < events.size(); ++i)
            for (const auto& [type, ids] : events[i].objects)
                for (const auto& id : ids) traces_[id].push_back(i);
    }

    std::unordered_map<std::string, EventIndex> event_lookup_;
    std::unordered_map<std::string, std::size_t> object_lookup_;
    std::unordered_map<std::string, std::vector<EventIndex>> traces_;
};

/// Checks every structural invariant of a log. Violations are collected,
/// never thrown.
inline ValidationReport validate_log(const DocelLog& log)
{
    ValidationReport report;
    auto error = [&](ErrorCode code, std::string msg, std::string where) {
        report.errors.push_back({code, std::move(msg), std::move(where)});
    };
    report.warnings = log.load_warnings;

    std::set<std::string> type_names;
    for (const auto& t : log.schema.object_types) {
        if (!type_names.insert(t.name).second)
            error(ErrorCode::DuplicateId, "object type declared twice: " + t.name, "manifest");
    }

    std::unordered_map<std::string, const ObjectInstance*> objects;
    for (const auto& o : log.objects) {
        if (!objects.emplace(o.id, &o).second) error(ErrorCode::DuplicateId, "duplicate object id " + o.id, o.id);
        const auto* type = log.schema.find_type(o.type);
        if (!type) {
            error(ErrorCode::SchemaMismatch, "object of undeclared type " + o.type, o.id);
            continue;
        }
        for (const auto& [name, value] : o.static_attributes) {
            const auto* spec = type->find(name);
            if (!spec || spec->dynamic)
                error(ErrorCode::SchemaMismatch, "undeclared static attribute " + name, o.id);
            else if (spec->kind != value.kind())
                error(ErrorCode::SchemaMismatch, "value kind mismatch for " + name, o.id);
        }
    }

    std::unordered_map<std::string, std::size_t> event_pos;
    for (std::size_t i = 0; i < log.events.size(); ++i) {
        const auto& e = log.events[i];
        const std::string where = "events row " + std::to_string(i + 1) + " (" + e.id + ")";
        if (!event_pos.emplace(e.id, i).second) error(ErrorCode::DuplicateId, "duplicate event id " + e.id, where);
        if (i > 0) {
            const auto& p = log.events[i - 1];
            if (std::tie(p.timestamp, p.id) > std::tie(e.timestamp, e.id))
                report.warnings.push_back({ErrorCode::SchemaMismatch, "events are not in canonical order", where});
        }
        if (e.object_count() == 0) error(ErrorCode::SchemaMismatch, "event references no objects", where);
        for (const auto& [type, ids] : e.objects) {
            if (!log.schema.find_type(type)) error(ErrorCode::SchemaMismatch, "undeclared object type " + type, where);
            for (const auto& id : ids) {
                auto it = objects.find(id);
                if (it == objects.end())
                    error(ErrorCode::DanglingForeignKey, "unknown object id " + id, where);
                else if (it->second->type != type)
                    error(ErrorCode::SchemaMismatch, "object " + id + " listed under type " + type, where);
            }
        }
        for (const auto& [name, value] : e.attributes) {
            auto it = std::find_if(log.schema.event_attributes.begin(), log.schema.event_attributes.end(),
                                   [&](const AttributeSpec& a) { return a.name == name; });
            if (it == log.schema.event_attributes.end())
                error(ErrorCode::SchemaMismatch, "undeclared event attribute " + name, where);
        }
    }

    std::set<std::string> record_ids;
    std::set<std::tuple<std::string, std::string, std::string>> triples;
    for (const auto& r : log.dynamic_records) {
        const std::string where = "dynamic record " + r.id;
        if (!record_ids.insert(r.id).second) error(ErrorCode::DuplicateId, "duplicate record id " + r.id, where);
        if (!triples.emplace(r.attribute, r.event_id, r.object_id).second)
            error(ErrorCode::DuplicateId, "duplicate (attribute, event, object) " + r.attribute + "/" + r.event_id + "/" + r.object_id,
                  where);
        auto ev = event_pos.find(r.event_id);
        auto ob = objects.find(r.object_id);
        if (ev == event_pos.end()) error(ErrorCode::DanglingForeignKey, "unknown event id " + r.event_id, where);
        if (ob == objects.end()) {
            error(ErrorCode::DanglingForeignKey, "unknown object id " + r.object_id, where);
            continue;
        }
        const auto* spec = log.attribute_spec(ob->second->type, r.attribute);
        if (!spec || !spec->dynamic)
            error(ErrorCode::SchemaMismatch, r.attribute + " is not a dynamic attribute of " + ob->second->type, where);
        else if (spec->kind != r.value.kind())
            error(ErrorCode::SchemaMismatch, "value kind mismatch for " + r.attribute, where);
        if (ev != event_pos.end() && !log.events[ev->second].references(r.object_id))
            error(ErrorCode::SchemaMismatch, "event " + r.event_id + " does not reference object " + r.object_id, where);
    }
    return report;
}

/// Events in which the object participates, in log order.
inline std::vector<const Event*> object_trace(const DocelLog& log, std::string_view object_id)
{
    if (!log.find_object(object_id))
        throw Error(ErrorCode::UnknownObject, "unknown object " + std::string(object_id));
    std::vector<const Event*> out;
    for (auto i : log.trace_of(object_id)) out.push_back(&log.events[i]);
    return out;
}

} // namespace iodda
