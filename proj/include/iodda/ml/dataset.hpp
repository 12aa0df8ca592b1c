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
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "iodda/error.hpp"
#include "iodda/value.hpp"

namespace iodda::ml {

/// Numeric passthrough, or a label map onto 0..k-1 in sorted label order
/// (booleans: False=0, True=1).
struct FeatureEncoding {
    std::string name;
    ValueKind kind = ValueKind::Numeric;
    std::vector<AttributeValue> labels; ///< sorted; empty for numeric

    bool numeric() const noexcept { return kind == ValueKind::Numeric; }

    double encode(const AttributeValue& v) const
    {
        if (numeric()) {
            if (!v.is_numeric()) throw Error(ErrorCode::MixedKinds, name + ": expected a numeric value");
            return v.as_number();
        }
        auto it = std::lower_bound(labels.begin(), labels.end(), v);
        if (it == labels.end() || !(*it == v))
            throw Error(ErrorCode::InvalidValue, name + ": unknown label '" + v.to_string() + "'");
        return static_cast<double>(it - labels.begin());
    }

    AttributeValue decode(double code) const
    {
        if (numeric()) return AttributeValue::numeric(code);
        auto i = static_cast<long>(std::llround(code));
        i = std::clamp<long>(i, 0, static_cast<long>(labels.size()) - 1);
        return labels[static_cast<std::size_t>(i)];
    }
};

struct Encodings {
    std::vector<FeatureEncoding> features;
    FeatureEncoding target;

    bool regression() const noexcept { return target.numeric(); }
    std::size_t class_count() const noexcept { return target.labels.size(); }
};

struct EncodedDataset {
    std::vector<std::vector<double>> rows;
    std::vector<double> target; ///< class index or value
    Encodings encodings;

    std::size_t size() const noexcept { return rows.size(); }
    std::size_t feature_count() const noexcept { return encodings.features.size(); }
    bool regression() const noexcept { return encodings.regression(); }

    /// Subset of rows, sharing encodings.
    EncodedDataset subset(const std::vector<std::size_t>& idx) const
    {
        EncodedDataset out;
        out.encodings = encodings;
        for (auto i : idx) {
            out.rows.push_back(rows[i]);
            out.target.push_back(target[i]);
        }
        return out;
    }
};

using RawRow = std::map<std::string, AttributeValue>;

namespace detail {

inline FeatureEncoding make_encoding(const std::string& name, const std::vector<const AttributeValue*>& values)
{
    FeatureEncoding enc;
    enc.name = name;
    enc.kind = values.front()->kind();
    for (const auto* v : values) {
        if (v->kind() != enc.kind) throw Error(ErrorCode::MixedKinds, name + " mixes value kinds");
    }
    if (!enc.numeric()) {
        for (const auto* v : values) enc.labels.push_back(*v);
        std::sort(enc.labels.begin(), enc.labels.end());
        enc.labels.erase(std::unique(enc.labels.begin(), enc.labels.end()), enc.labels.end());
    }
    return enc;
}

} // namespace detail

/// Encodes raw rows; features are every attribute except the target, in
/// name order. Regression iff the target is numeric.
inline EncodedDataset encode_features(const std::vector<RawRow>& raw, const std::string& target)
{
    if (raw.empty()) throw Error(ErrorCode::EmptyDataset, "no rows to encode");
    EncodedDataset ds;
    std::vector<std::string> names;
    for (const auto& [name, v] : raw.front())
        if (name != target) names.push_back(name);
    for (const auto& row : raw) {
        if (!row.count(target)) throw Error(ErrorCode::InvalidValue, "row lacks target " + target);
        if (row.size() != names.size() + 1) throw Error(ErrorCode::InvalidValue, "rows do not share one attribute set");
    }
    auto column = [&](const std::string& name) {
        std::vector<const AttributeValue*> out;
        for (const auto& row : raw) {
            auto it = row.find(name);
            if (it == row.end()) throw Error(ErrorCode::InvalidValue, "rows do not share one attribute set");
            out.push_back(&it->second);
        }
        return out;
    };
    for (const auto& name : names) ds.encodings.features.push_back(detail::make_encoding(name, column(name)));
    ds.encodings.target = detail::make_encoding(target, column(target));
    for (const auto& row : raw) {
        std::vector<double> x;
        x.reserve(names.size());
        for (std::size_t f = 0; f < names.size(); ++f) x.push_back(ds.encodings.features[f].encode(row.at(names[f])));
        ds.rows.push_back(std::move(x));
        ds.target.push_back(ds.encodings.target.encode(row.at(target)));
    }
    return ds;
}

} // namespace iodda::ml
