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

#include "json.hpp"

#include "iodda/decision_table.hpp"
#include "iodda/discovery.hpp"
#include "iodda/export.hpp"

namespace iodda {

inline constexpr const char* kToolVersion = "0.1.0";

inline nlohmann::json config_json(const MiningConfig& c)
{
    return {{"min_shift", c.min_shift},
            {"max_shift", c.max_shift},
            {"min_traceprop", c.min_traceprop},
            {"min_corr", c.min_corr},
            {"min_dev", c.min_dev},
            {"min_support", c.min_support},
            {"rng_seed", c.rng_seed},
            {"learner",
             {{"n_trees", c.learner.n_trees},
              {"bootstrap", c.learner.bootstrap},
              {"max_features", c.learner.max_features},
              {"max_depth", c.learner.max_depth},
              {"min_leaf", c.learner.min_leaf},
              {"cv_folds", c.learner.cv_folds},
              {"regression_tolerance", c.learner.regression_tolerance}}}};
}

/// Everything a mining run writes, keyed by file name.
struct MiningOutputs {
    std::vector<DiscoveredDrd> drds;
    std::vector<ActivityDecisionTable> tables;
    std::map<std::string, std::string> files;
    nlohmann::json manifest; ///< serialized as manifest.json by the caller
};

namespace detail {

inline std::string unique_stem(std::map<std::string, int>& used, const std::string& stem)
{
    int n = ++used[stem];
    return n == 1 ? stem : stem + "_" + std::to_string(n);
}

inline nlohmann::json model_rules_json(const PredictiveModel& m)
{
    auto j = rules_to_json_value(ml::tree_to_rules(m.tree, m.encodings));
    j["decision"] = m.output.id();
    j["inputs"] = nlohmann::json::array();
    for (const auto& in : m.inputs) j["inputs"].push_back(in.id());
    j["accuracy"] = round6(m.accuracy);
    j["rows"] = m.rows;
    j["traces"] = m.traces.size();
    return j;
}

} // namespace detail

/// Mines a log and renders DRDs (JSON, DOT), per-decision trees and rules,
/// and activity-level decision tables. Output is a pure function of
/// (log, config).
inline MiningOutputs mine_to_files(const DocelLog& log, const MiningConfig& config)
{
    MiningOutputs out;
    DecisionMiner miner(log, config);
    out.drds = miner.run();
    out.tables = build_activity_tables(miner);
    const auto fingerprint = log_fingerprint(log);
    const nlohmann::json metadata{{"config", config_json(config)}, {"log_fingerprint", fingerprint}};

    std::map<std::string, int> used;
    std::map<const PredictiveModel*, std::string> model_names;
    for (const auto& drd : out.drds) {
        auto stem = detail::unique_stem(used, "drd_" + node_stem(drd.top));
        auto doc = to_document(drd, metadata);
        out.files[stem + ".json"] = drd_to_json(doc);
        out.files[stem + ".dot"] = drd_to_dot(doc);
        for (const auto& [node, model] : drd.models) {
            if (model_names.count(model.get())) continue;
            auto name = detail::unique_stem(used, node_stem(node));
            model_names[model.get()] = name;
            out.files["tree_" + name + ".dot"] = tree_to_dot(model->tree, model->encodings);
            out.files["rules_" + name + ".json"] = canonical_json(detail::model_rules_json(*model));
        }
    }
    for (const auto& t : out.tables) {
        auto name = detail::unique_stem(used, file_stem(t.attribute + " " + t.activity + " " + t.object_type) + "_all-shifts");
        out.files["tree_" + name + ".dot"] = tree_to_dot(t.tree, t.encodings);
        auto j = rules_to_json_value(ml::tree_to_rules(t.tree, t.encodings));
        j["decision"] = t.name();
        j["inputs"] = nlohmann::json::array();
        for (const auto& in : t.inputs)
            j["inputs"].push_back({{"attribute", in.first}, {"object_type", in.second}, {"correlation", round6(t.correlations.at(in))}});
        j["rows"] = t.rows;
        out.files["rules_" + name + ".json"] = canonical_json(j);
    }

    out.manifest = {{"command", "mine"},
                    {"config", config_json(config)},
                    {"log_fingerprint", fingerprint},
                    {"tool_version", kToolVersion},
                    {"drd_count", out.drds.size()}};
    out.manifest["outputs"] = nlohmann::json::array();
    for (const auto& [name, content] : out.files) out.manifest["outputs"].push_back(name);
    return out;
}

} // namespace iodda
