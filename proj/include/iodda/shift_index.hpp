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
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "iodda/docel.hpp"

namespace iodda {

/// (attribute, activity, object type, shift number): a node of a discovered
/// decision structure.
struct Ataots {
    std::string attribute;
    std::string activity;
    std::string object_type;
    std::size_t shift = 1;

    /// "Attr_shift-n"
    std::string label() const { return attribute + "_shift-" + std::to_string(shift); }
    /// Unique within a log: label, activity and object type.
    std::string id() const { return label() + "|" + activity + "|" + object_type; }

    friend auto operator<=>(const Ataots&, const Ataots&) = default;
};

using ObjectSet = std::set<ObjectId>;

struct TraceSet {
    ObjectSet objects;
    Ataots anchor;
};

struct Shift {
    EventIndex event;
    AttributeValue value;
};

using ShiftKey = std::tuple<std::string, std::string, ObjectId>; // attribute, activity, object

/// Shift functions of a log. Dynamic records become shifts of the activity of
/// their event; static attributes get one pseudo-shift at the object's first
/// event, attributed to that event's activity. Holds a reference to the log.
class ShiftIndex {
public:
    std::map<ShiftKey, std::vector<EventIndex>> shifts; ///< dynamic records only
    std::map<std::pair<std::string, ObjectId>, EventIndex> static_origin;
    std::map<std::string, std::size_t> object_type_counts;

    explicit ShiftIndex(const DocelLog& log) : log_(&log)
    {
        for (const auto& t : log.schema.object_types) object_type_counts[t.name] = 0;
        for (const auto& o : log.objects) ++object_type_counts[o.type];

        for (const auto& r : log.dynamic_records) {
            auto e = *log.event_index(r.event_id);
            const auto& activity = log.events[e].activity;
            shifts[{r.attribute, activity, r.object_id}].push_back(e);
            series_[{r.attribute, activity, r.object_id}].push_back({e, r.value});
            history_[{r.attribute, r.object_id}].push_back({e, r.value});
        }
        for (const auto& o : log.objects) {
            const auto& trace = log.trace_of(o.id);
            if (trace.empty()) continue;
            const auto first = trace.front();
            for (const auto& [name, value] : o.static_attributes) {
                static_origin[{name, o.id}] = first;
                series_[{name, log.events[first].activity, o.id}].push_back({first, value});
            }
        }
        // Records are canonical (event order), so every list is already sorted.
        for (const auto& [key, list] : series_) {
            const auto& [attribute, activity, object] = key;
            shifted_[{attribute, activity, log.find_object(object)->type}][object] = list.size();
        }
    }

    const DocelLog& log() const noexcept { return *log_; }

    /// Shifts of (attribute, activity) on one object, static pseudo-shift included.
    const std::vector<Shift>& series(const std::string& attribute, const std::string& activity, const ObjectId& object) const
    {
        static const std::vector<Shift> empty;
        auto it = series_.find({attribute, activity, object});
        return it == series_.end() ? empty : it->second;
    }

    /// The n-th shift (1-based) or nullptr.
    const Shift* nth(const Ataots& node, const ObjectId& object) const
    {
        const auto& s = series(node.attribute, node.activity, object);
        return node.shift >= 1 && node.shift <= s.size() ? &s[node.shift - 1] : nullptr;
    }

    /// Objects of a type with at least one shift of (attribute, activity), with their shift counts.
    const std::map<ObjectId, std::size_t>& shifted_objects(const std::string& attribute, const std::string& activity,
                                                           const std::string& type) const
    {
        static const std::map<ObjectId, std::size_t> empty;
        auto it = shifted_.find({attribute, activity, type});
        return it == shifted_.end() ? empty : it->second;
    }

    const std::map<std::tuple<std::string, std::string, std::string>, std::map<ObjectId, std::size_t>>&
    shifted_triples() const noexcept
    {
        return shifted_;
    }

    /// Value of an attribute on an object as of an event: the static value, or
    /// the latest dynamic record at (inclusive) or before (exclusive) the event.
    std::optional<AttributeValue> value_at(const std::string& attribute, const ObjectId& object, EventIndex event,
                                           bool inclusive) const
    {
        const auto* o = log_->find_object(object);
        if (!o) return std::nullopt;
        if (auto it = o->static_attributes.find(attribute); it != o->static_attributes.end()) return it->second;
        auto h = history_.find({attribute, object});
        if (h == history_.end()) return std::nullopt;
        const Shift* best = nullptr;
        for (const auto& s : h->second) {
            if (s.event > event || (!inclusive && s.event == event)) break;
            best = &s;
        }
        if (!best) return std::nullopt;
        return best->value;
    }

    std::size_t type_count(const std::string& type) const
    {
        auto it = object_type_counts.find(type);
        return it == object_type_counts.end() ? 0 : it->second;
    }

    /// Debug dump for test tooling.
    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["shifts"] = nlohmann::json::array();
        for (const auto& [key, events] : shifts) {
            nlohmann::json ids = nlohmann::json::array();
            for (auto e : events) ids.push_back(log_->events[e].id);
            j["shifts"].push_back({{"attribute", std::get<0>(key)},
                                   {"activity", std::get<1>(key)},
                                   {"object", std::get<2>(key)},
                                   {"events", ids}});
        }
        j["static_origin"] = nlohmann::json::array();
        for (const auto& [key, e] : static_origin)
            j["static_origin"].push_back({{"attribute", key.first}, {"object", key.second}, {"event", log_->events[e].id}});
        j["traces"] = nlohmann::json::object();
        for (const auto& o : log_->objects) {
            nlohmann::json ids = nlohmann::json::array();
            for (auto e : log_->trace_of(o.id)) ids.push_back(log_->events[e].id);
            j["traces"][o.id] = ids;
        }
        j["object_type_counts"] = object_type_counts;
        return j;
    }

private:
    const DocelLog* log_;
    std::map<ShiftKey, std::vector<Shift>> series_;
    std::map<std::pair<std::string, ObjectId>, std::vector<Shift>> history_;
    std::map<std::tuple<std::string, std::string, std::string>, std::map<ObjectId, std::size_t>> shifted_;
};

inline ShiftIndex build_shift_index(const DocelLog& log) { return ShiftIndex(log); }

using AttributeOfType = std::pair<std::string, std::string>; // attribute, object type

struct CandidateVariables {
    std::map<std::string, std::set<AttributeOfType>> inputs;  ///< I_a
    std::map<std::string, std::set<AttributeOfType>> outputs; ///< O_a

    bool is_input(const std::string& activity, const AttributeOfType& v) const
    {
        auto it = inputs.find(activity);
        return it != inputs.end() && it->second.count(v);
    }
    bool is_output(const std::string& activity, const AttributeOfType& v) const
    {
        auto it = outputs.find(activity);
        return it != outputs.end() && it->second.count(v);
    }
};

/// I_a: attributes whose current value on the objects taking part in a's
/// events is not constant. O_a: attributes a writes with more than one
/// distinct value, on more than min_shift of the objects of that type.
/// Text attributes are never candidates.
inline CandidateVariables candidate_variables(const ShiftIndex& index, const DocelLog& log, double min_shift)
{
    CandidateVariables out;
    auto usable = [&](const std::string& type, const std::string& attribute) {
        const auto* spec = log.attribute_spec(type, attribute);
        return spec && spec->kind != ValueKind::Text;
    };

    std::map<std::pair<std::string, AttributeOfType>, std::set<AttributeValue>> seen;
    for (EventIndex e = 0; e < log.events.size(); ++e) {
        const auto& ev = log.events[e];
        for (const auto& [type, ids] : ev.objects) {
            const auto* spec = log.schema.find_type(type);
            for (const auto& a : spec->attributes) {
                if (a.kind == ValueKind::Text) continue;
                auto& values = seen[{ev.activity, {a.name, type}}];
                if (values.size() > 1) continue;
                for (const auto& id : ids)
                    if (auto v = index.value_at(a.name, id, e, true)) values.insert(*v);
            }
        }
    }
    for (const auto& [key, values] : seen)
        if (values.size() > 1) out.inputs[key.first].insert(key.second);

    for (const auto& [triple, objects] : index.shifted_triples()) {
        const auto& [attribute, activity, type] = triple;
        if (!usable(type, attribute)) continue;
        std::set<AttributeValue> written;
        for (const auto& [object, count] : objects)
            for (const auto& s : index.series(attribute, activity, object)) written.insert(s.value);
        if (written.size() < 2) continue;
        if (static_cast<double>(objects.size()) > min_shift * static_cast<double>(index.type_count(type)))
            out.outputs[activity].insert({attribute, type});
    }
    return out;
}

/// One node per output (attribute, activity, type) and shift number up to
/// max_shift, as long as some object reaches that shift. Sorted.
inline std::vector<Ataots> enumerate_ataots(const ShiftIndex& index, const CandidateVariables& candidates,
                                            std::size_t max_shift)
{
    std::vector<Ataots> out;
    for (const auto& [activity, vars] : candidates.outputs)
        for (const auto& [attribute, type] : vars) {
            std::size_t most = 0;
            for (const auto& [object, count] : index.shifted_objects(attribute, activity, type)) most = std::max(most, count);
            for (std::size_t n = 1; n <= std::min(most, max_shift); ++n) out.push_back({attribute, activity, type, n});
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Objects of the node's type with at least node.shift shifts.
inline TraceSet traces_with_shift(const ShiftIndex& index, const Ataots& node)
{
    TraceSet out{{}, node};
    for (const auto& [object, count] : index.shifted_objects(node.attribute, node.activity, node.object_type))
        if (count >= node.shift) out.objects.insert(object);
    return out;
}

/// Objects of type2 that share at least one event with o; o itself counts
/// when it is of type2.
inline ObjectSet related_objects(const ShiftIndex& index, const DocelLog& log, const ObjectId& o, const std::string& type2)
{
    const auto* obj = log.find_object(o);
    if (!obj) throw Error(ErrorCode::UnknownObject, "unknown object " + o);
    (void)index;
    ObjectSet out;
    if (obj->type == type2) out.insert(o);
    for (auto e : log.trace_of(o)) {
        auto it = log.events[e].objects.find(type2);
        if (it != log.events[e].objects.end()) out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

} // namespace iodda
