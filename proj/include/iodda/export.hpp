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

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "iodda/decision_table.hpp"
#include "iodda/discovery.hpp"
#include "iodda/ml/rules.hpp"

namespace iodda {

inline std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Content hash of a log (schema, events, objects, dynamic records).
inline std::string log_fingerprint(const DocelLog& log)
{
    Fnv1a h;
    for (const auto& t : log.schema.object_types) {
        h.add(t.name);
        for (const auto& a : t.attributes) h.add(a.name).add(kind_name(a.kind)).add(std::uint64_t(a.dynamic));
    }
    for (const auto& a : log.schema.event_attributes) h.add(a.name).add(kind_name(a.kind));
    for (const auto& e : log.events) {
        h.add(e.id).add(e.activity).add(format_timestamp(e.timestamp));
        for (const auto& [type, ids] : e.objects) {
            h.add(type);
            for (const auto& id : ids) h.add(id);
        }
        for (const auto& [name, v] : e.attributes) h.add(name).add(v.to_string());
    }
    for (const auto& o : log.objects) {
        h.add(o.id).add(o.type);
        for (const auto& [name, v] : o.static_attributes) h.add(name).add(v.to_string());
    }
    for (const auto& r : log.dynamic_records) h.add(r.id).add(r.attribute).add(r.value.to_string()).add(r.event_id).add(r.object_id);
    return hex64(h.value());
}

inline double round6(double v) { return std::round(v * 1e6) / 1e6; }

/// Canonical JSON text: sorted keys, two-space indent, floats with six
/// decimals.
inline std::string canonical_json(const nlohmann::json& j)
{
    std::string out;
    auto indent = [&](int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); };
    auto emit = [&](auto&& self, const nlohmann::json& v, int depth) -> void {
        switch (v.type()) {
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = v.begin(); it != v.end(); ++it, ++i) {
                indent(depth + 1);
                out += nlohmann::json(it.key()).dump() + ": ";
                self(self, it.value(), depth + 1);
                out += i + 1 < v.size() ? ",\n" : "\n";
            }
            indent(depth);
            out += "}";
            break;
        }
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                indent(depth + 1);
                self(self, v[i], depth + 1);
                out += i + 1 < v.size() ? ",\n" : "\n";
            }
            indent(depth);
            out += "]";
            break;
        }
        case nlohmann::json::value_t::number_float: {
            char buf[64];
            double d = v.get<double>();
            if (d == 0) d = 0; // no "-0.000000"
            std::snprintf(buf, sizeof buf, "%.6f", d);
            out += buf;
            break;
        }
        default: out += v.dump();
        }
    };
    emit(emit, j, 0);
    out += "\n";
    return out;
}

struct DocNode {
    std::string id;
    std::string label;
    std::string attribute;
    std::string activity;
    std::string object_type;
    std::size_t shift = 1;
    std::string kind; ///< "decision" or "input"
    std::optional<double> accuracy;

    friend bool operator==(const DocNode&, const DocNode&) = default;
};

struct DocEdge {
    std::string from;
    std::string to;
    std::size_t support = 0;
    double correlation = 0;

    friend bool operator==(const DocEdge&, const DocEdge&) = default;
};

/// Serializable view of a discovered DRD.
struct DrdDocument {
    std::string top;
    std::size_t trace_count = 0;
    std::vector<DocNode> nodes; ///< sorted by node
    std::vector<DocEdge> edges; ///< sorted by (from, to) node
    nlohmann::json metadata = nlohmann::json::object();

    friend bool operator==(const DrdDocument&, const DrdDocument&) = default;
};

inline DrdDocument to_document(const DiscoveredDrd& drd, nlohmann::json metadata = nlohmann::json::object())
{
    DrdDocument doc;
    doc.top = drd.top.id();
    doc.trace_count = drd.trace_set.size();
    doc.metadata = std::move(metadata);
    for (const auto& n : drd.nodes) {
        DocNode d{n.id(), n.label(), n.attribute, n.activity, n.object_type, n.shift,
                  drd.is_decision(n) ? "decision" : "input", std::nullopt};
        if (auto it = drd.models.find(n); it != drd.models.end()) d.accuracy = round6(it->second->accuracy);
        doc.nodes.push_back(std::move(d));
    }
    for (const auto& [key, e] : drd.edges)
        doc.edges.push_back({e.from.id(), e.to.id(), e.support.size(), round6(e.correlation)});
    return doc;
}

inline nlohmann::json to_json_value(const DrdDocument& doc)
{
    nlohmann::json j;
    j["top"] = doc.top;
    j["trace_count"] = doc.trace_count;
    j["metadata"] = doc.metadata;
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : doc.nodes) {
        nlohmann::json jn{{"id", n.id},           {"label", n.label}, {"attribute", n.attribute},
                          {"activity", n.activity}, {"object_type", n.object_type},
                          {"shift", n.shift},     {"kind", n.kind}};
        if (n.accuracy) jn["accuracy"] = *n.accuracy;
        j["nodes"].push_back(std::move(jn));
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : doc.edges)
        j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"support", e.support}, {"correlation", e.correlation}});
    return j;
}

inline std::string drd_to_json(const DrdDocument& doc) { return canonical_json(to_json_value(doc)); }

inline std::string drd_to_json(const DiscoveredDrd& drd, nlohmann::json metadata = nlohmann::json::object())
{
    return drd_to_json(to_document(drd, std::move(metadata)));
}

inline DrdDocument drd_from_json(const std::string& text)
{
    try {
        auto j = nlohmann::json::parse(text);
        DrdDocument doc;
        doc.top = j.at("top").get<std::string>();
        doc.trace_count = j.at("trace_count").get<std::size_t>();
        doc.metadata = j.value("metadata", nlohmann::json::object());
        for (const auto& jn : j.at("nodes")) {
            DocNode n{jn.at("id").get<std::string>(),       jn.at("label").get<std::string>(),
                      jn.at("attribute").get<std::string>(), jn.at("activity").get<std::string>(),
                      jn.at("object_type").get<std::string>(), jn.at("shift").get<std::size_t>(),
                      jn.at("kind").get<std::string>(),      std::nullopt};
            if (jn.contains("accuracy")) n.accuracy = round6(jn.at("accuracy").get<double>());
            doc.nodes.push_back(std::move(n));
        }
        for (const auto& je : j.at("edges"))
            doc.edges.push_back({je.at("from").get<std::string>(), je.at("to").get<std::string>(),
                                 je.at("support").get<std::size_t>(), round6(je.at("correlation").get<double>())});
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidDocument, e.what());
    }
}

inline std::string dot_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

/// Decisions are boxes, inputs rounded boxes; edges carry supporting-object
/// counts. Node ids follow node order.
inline std::string drd_to_dot(const DrdDocument& doc)
{
    std::ostringstream out;
    out << "digraph drd {\n";
    if (!doc.nodes.empty()) out << "  rankdir=BT;\n  node [fontname=\"Helvetica\"];\n";
    std::map<std::string, std::string> ids;
    for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
        const auto& n = doc.nodes[i];
        ids[n.id] = "n" + std::to_string(i);
        out << "  " << ids[n.id] << " [label=\"" << dot_escape(n.label) << "\\n" << dot_escape(n.activity) << "\\n"
            << dot_escape(n.object_type) << "\", shape=box" << (n.kind == "input" ? ", style=rounded" : "") << "];\n";
    }
    for (const auto& e : doc.edges)
        out << "  " << ids.at(e.from) << " -> " << ids.at(e.to) << " [label=\"" << e.support << "\"];\n";
    out << "}\n";
    return out.str();
}

inline std::string drd_to_dot(const DiscoveredDrd& drd) { return drd_to_dot(to_document(drd)); }

namespace detail {

inline std::string describe_split(const ml::FeatureEncoding& f, double threshold)
{
    if (f.numeric()) return f.name + " <= " + format_number(round6(threshold));
    std::vector<AttributeValue> left;
    for (std::size_t k = 0; k < f.labels.size(); ++k)
        if (static_cast<double>(k) <= threshold) left.push_back(f.labels[k]);
    if (left.size() == 1) return f.name + " = " + left.front().to_string();
    std::string s = f.name + " in {";
    for (std::size_t i = 0; i < left.size(); ++i) s += (i ? ", " : "") + left[i].to_string();
    return s + "}";
}

inline std::string describe_outcome(const ml::Encodings& enc, double value)
{
    return enc.regression() ? format_number(round6(value)) : enc.target.decode(value).to_string();
}

} // namespace detail

/// Split nodes show decoded conditions (true branch left), leaves the
/// outcome and sample count.
inline std::string tree_to_dot(const ml::DecisionTree& tree, const ml::Encodings& enc)
{
    std::ostringstream out;
    out << "digraph tree {\n  node [shape=box, fontname=\"Helvetica\"];\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        out << "  t" << i << " [label=\"";
        if (n.leaf())
            out << dot_escape(enc.target.name) << " = " << dot_escape(detail::describe_outcome(enc, n.value));
        else
            out << dot_escape(detail::describe_split(enc.features[static_cast<std::size_t>(n.feature)], n.threshold));
        out << "\\nsamples = " << n.samples << "\"" << (n.leaf() ? ", style=rounded" : "") << "];\n";
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        if (n.leaf()) continue;
        out << "  t" << i << " -> t" << n.left << " [label=\"true\"];\n";
        out << "  t" << i << " -> t" << n.right << " [label=\"false\"];\n";
    }
    out << "}\n";
    return out.str();
}

inline nlohmann::json value_json(const AttributeValue& v)
{
    switch (v.kind()) {
    case ValueKind::Numeric: return round6(v.as_number());
    case ValueKind::Boolean: return v.as_bool();
    default: return v.as_string();
    }
}

inline nlohmann::json rules_to_json_value(const ml::RuleList& rules)
{
    nlohmann::json j;
    j["outcome"] = rules.outcome_name;
    j["rules"] = nlohmann::json::array();
    for (const auto& r : rules.rules) {
        nlohmann::json conds = nlohmann::json::array();
        for (const auto& c : r.conditions) {
            nlohmann::json jc{{"feature", c.name}};
            if (c.numeric) {
                if (!std::isinf(c.lower)) jc["above"] = round6(c.lower);
                if (!std::isinf(c.upper)) jc["at_most"] = round6(c.upper);
            } else {
                jc["in"] = nlohmann::json::array();
                for (const auto& l : c.labels) jc["in"].push_back(value_json(l));
            }
            conds.push_back(std::move(jc));
        }
        j["rules"].push_back({{"if", conds}, {"then", value_json(r.outcome)}, {"support", r.support}, {"text", r.to_string()}});
    }
    return j;
}

/// File-name-safe stem: runs of characters outside [A-Za-z0-9-] become '_'.
inline std::string file_stem(std::string_view s)
{
    std::string out;
    for (char c : s) {
        bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
        if (keep)
            out += c;
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

inline std::string node_stem(const Ataots& n) { return file_stem(n.label() + " " + n.activity + " " + n.object_type); }

} // namespace iodda
