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
#include <limits>
#include <string>
#include <vector>

#include "iodda/ml/tree.hpp"

namespace iodda::ml {

/// One feature restricted to (lower, upper] in encoded space. Categorical
/// features also carry the decoded labels inside the interval.
struct Condition {
    std::size_t feature = 0;
    std::string name;
    bool numeric = true;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    std::vector<AttributeValue> labels;

    bool matches(double x) const noexcept { return x > lower && x <= upper; }

    std::string to_string() const
    {
        if (!numeric) {
            if (labels.size() == 1) return name + " = " + labels.front().to_string();
            std::string s = name + " in {";
            for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? ", " : "") + labels[i].to_string();
            return s + "}";
        }
        if (std::isinf(lower)) return name + " <= " + format_number(upper);
        if (std::isinf(upper)) return name + " > " + format_number(lower);
        return format_number(lower) + " < " + name + " <= " + format_number(upper);
    }
};

struct Rule {
    std::vector<Condition> conditions; ///< at most one per feature, feature order
    AttributeValue outcome;
    double encoded_outcome = 0;
    std::size_t support = 0; ///< training rows reaching the leaf

    bool matches(const std::vector<double>& x) const
    {
        for (const auto& c : conditions)
            if (!c.matches(x[c.feature])) return false;
        return true;
    }

    std::string to_string() const
    {
        std::string s = "IF ";
        if (conditions.empty()) s += "true";
        for (std::size_t i = 0; i < conditions.size(); ++i) s += (i ? " AND " : "") + conditions[i].to_string();
        return s + " THEN " + outcome.to_string();
    }
};

struct RuleList {
    std::vector<Rule> rules;
    std::string outcome_name;

    /// Index of the first rule matching an encoded vector, or -1.
    long first_match(const std::vector<double>& x) const
    {
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (rules[i].matches(x)) return static_cast<long>(i);
        return -1;
    }
};

namespace detail {

inline void collect_rules(const DecisionTree& tree, const Encodings& enc, int node, std::vector<Condition> bounds, RuleList& out)
{
    const auto& n = tree.nodes[static_cast<std::size_t>(node)];
    if (!n.leaf()) {
        auto left = bounds, right = bounds;
        auto f = static_cast<std::size_t>(n.feature);
        left[f].upper = std::min(left[f].upper, n.threshold);
        right[f].lower = std::max(right[f].lower, n.threshold);
        collect_rules(tree, enc, n.left, std::move(left), out);
        collect_rules(tree, enc, n.right, std::move(right), out);
        return;
    }
    Rule rule;
    rule.encoded_outcome = n.value;
    rule.outcome = enc.target.decode(n.value);
    rule.support = n.samples;
    for (auto& c : bounds) {
        if (std::isinf(c.lower) && std::isinf(c.upper)) continue;
        if (!c.numeric) {
            const auto& labels = enc.features[c.feature].labels;
            for (std::size_t k = 0; k < labels.size(); ++k)
                if (c.matches(static_cast<double>(k))) c.labels.push_back(labels[k]);
            if (c.labels.size() == labels.size()) continue; // no restriction
        }
        rule.conditions.push_back(std::move(c));
    }
    out.rules.push_back(std::move(rule));
}

} // namespace detail

/// One rule per leaf, left-to-right; the rules partition the feature space.
inline RuleList tree_to_rules(const DecisionTree& tree, const Encodings& enc)
{
    RuleList out;
    out.outcome_name = enc.target.name;
    std::vector<Condition> bounds(enc.features.size());
    for (std::size_t f = 0; f < bounds.size(); ++f) {
        bounds[f].feature = f;
        bounds[f].name = enc.features[f].name;
        bounds[f].numeric = enc.features[f].numeric();
    }
    detail::collect_rules(tree, enc, 0, std::move(bounds), out);
    return out;
}

} // namespace iodda::ml
