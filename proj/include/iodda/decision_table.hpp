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

#include <map>
#include <string>
#include <vector>

#include "iodda/discovery.hpp"

namespace iodda {

/// Decision logic of one output attribute over every shift an activity makes,
/// whatever the shift number. Inputs are the activity's candidate inputs as
/// they stood just before each event.
struct ActivityDecisionTable {
    std::string attribute;
    std::string activity;
    std::string object_type;
    std::vector<AttributeOfType> inputs; ///< feature order
    std::map<AttributeOfType, double> correlations;
    std::size_t rows = 0;
    ml::Encodings encodings;
    ml::DecisionTree tree;

    std::string name() const { return attribute + "@" + activity + "@" + object_type; }
};

namespace detail {

inline std::string table_feature_name(const AttributeOfType& v, const std::set<AttributeOfType>& all)
{
    std::size_t same = 0;
    for (const auto& other : all) same += other.first == v.first;
    return same > 1 ? v.first + " (" + v.second + ")" : v.first;
}

} // namespace detail

/// Table for (attribute, activity, type); nullopt when no input correlates
/// above min_corr or there are fewer than 2 rows.
inline std::optional<ActivityDecisionTable> build_activity_table(const DecisionMiner& miner, const std::string& attribute,
                                                                 const std::string& activity, const std::string& type)
{
    const auto& index = miner.index();
    const auto& log = index.log();
    const auto& cfg = miner.config();
    std::set<AttributeOfType> features;
    if (auto it = miner.candidates().inputs.find(activity); it != miner.candidates().inputs.end())
        for (const auto& v : it->second)
            if (v != AttributeOfType{attribute, type}) features.insert(v);
    if (features.empty()) return std::nullopt;

    std::map<AttributeOfType, std::vector<AttributeValue>> columns;
    std::vector<AttributeValue> target;
    std::set<AttributeOfType> incomplete;
    for (const auto& [object, count] : index.shifted_objects(attribute, activity, type))
        for (const auto& s : index.series(attribute, activity, object)) {
            const auto& ev = log.events[s.event];
            target.push_back(s.value);
            for (const auto& f : features) {
                std::optional<AttributeValue> v;
                if (f.second == type) {
                    v = index.value_at(f.first, object, s.event, false);
                } else if (auto it = ev.objects.find(f.second); it != ev.objects.end()) {
                    for (const auto& o2 : it->second)
                        if ((v = index.value_at(f.first, o2, s.event, false))) break;
                }
                if (v)
                    columns[f].push_back(*v);
                else
                    incomplete.insert(f);
            }
        }
    if (target.size() < 2) return std::nullopt;

    ActivityDecisionTable table{attribute, activity, type, {}, {}, target.size(), {}, {}};
    for (const auto& f : features) {
        if (incomplete.count(f)) continue;
        double c = correlate(columns[f], target);
        if (c > cfg.min_corr) {
            table.inputs.push_back(f);
            table.correlations[f] = c;
        }
    }
    if (table.inputs.empty()) return std::nullopt;

    std::vector<ml::RawRow> raw(target.size());
    const std::string target_name = "\x01target";
    std::set<AttributeOfType> chosen(table.inputs.begin(), table.inputs.end());
    for (std::size_t r = 0; r < raw.size(); ++r) {
        for (const auto& f : table.inputs) raw[r].emplace(detail::table_feature_name(f, chosen), columns[f][r]);
        raw[r].emplace(target_name, target[r]);
    }
    auto ds = ml::encode_features(raw, target_name);
    ds.encodings.target.name = attribute;
    // Features come out in name order; keep inputs aligned with them.
    std::vector<AttributeOfType> ordered;
    for (const auto& enc : ds.encodings.features)
        for (const auto& f : table.inputs)
            if (detail::table_feature_name(f, chosen) == enc.name) ordered.push_back(f);
    table.inputs = std::move(ordered);
    auto learner = cfg.learner;
    learner.seed = Fnv1a().add(cfg.rng_seed).add(table.name()).value();
    learner.max_features = 0;
    table.tree = ml::train_decision_tree(ds, learner);
    table.encodings = std::move(ds.encodings);
    return table;
}

/// Tables for every output candidate of every activity, sorted by name.
inline std::vector<ActivityDecisionTable> build_activity_tables(const DecisionMiner& miner)
{
    std::vector<ActivityDecisionTable> out;
    for (const auto& [activity, vars] : miner.candidates().outputs)
        for (const auto& [attribute, type] : vars)
            if (auto t = build_activity_table(miner, attribute, activity, type)) out.push_back(std::move(*t));
    return out;
}

} // namespace iodda
