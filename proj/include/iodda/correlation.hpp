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
#include <vector>

#include "iodda/error.hpp"
#include "iodda/value.hpp"

namespace iodda {

/// Equal-frequency bin of each numeric value, k = min(10, ceil(sqrt n)).
/// Bins are right-closed at the last value of each chunk of the sorted sample;
/// tied values always share a bin.
inline std::vector<int> equal_frequency_bins(const std::vector<double>& values)
{
    const std::size_t n = values.size();
    const std::size_t k = std::min<std::size_t>(10, static_cast<std::size_t>(std::ceil(std::sqrt(double(n)))));
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> cuts;
    for (std::size_t j = 1; j < k; ++j) cuts.push_back(sorted[(j * n) / k - 1]);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<int> out;
    out.reserve(n);
    for (double v : values)
        out.push_back(static_cast<int>(std::lower_bound(cuts.begin(), cuts.end(), v) - cuts.begin()));
    return out;
}

namespace detail {

inline std::vector<int> discretize(const std::vector<AttributeValue>& values)
{
    bool numeric = std::all_of(values.begin(), values.end(), [](const AttributeValue& v) { return v.is_numeric(); });
    if (numeric) {
        std::vector<double> raw;
        raw.reserve(values.size());
        for (const auto& v : values) raw.push_back(v.as_number());
        return equal_frequency_bins(raw);
    }
    std::map<AttributeValue, int> codes;
    for (const auto& v : values) codes.emplace(v, 0);
    int next = 0;
    for (auto& [v, c] : codes) c = next++;
    std::vector<int> out;
    for (const auto& v : values) out.push_back(codes[v]);
    return out;
}

} // namespace detail

/// Normalized mutual information of two discrete codings,
/// I(X;Y) / max(H(X), H(Y)) in nats; 0 when both marginals are constant.
inline double normalized_mutual_information(const std::vector<int>& x, const std::vector<int>& y)
{
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "correlate: samples differ in length");
    if (x.size() < 2) throw Error(ErrorCode::TooFewSamples, "correlate: need at least 2 samples");
    const double n = static_cast<double>(x.size());
    std::map<int, double> px, py;
    std::map<std::pair<int, int>, double> pxy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        px[x[i]] += 1;
        py[y[i]] += 1;
        pxy[{x[i], y[i]}] += 1;
    }
    auto entropy = [&](const std::map<int, double>& p) {
        double h = 0;
        for (const auto& [k, c] : p) h -= c / n * std::log(c / n);
        return h;
    };
    const double hx = entropy(px), hy = entropy(py), h = std::max(hx, hy);
    if (h <= 0) return 0.0;
    double mi = 0;
    for (const auto& [k, c] : pxy) mi += c / n * std::log(c * n / (px[k.first] * py[k.second]));
    return std::clamp(mi / h, 0.0, 1.0);
}

/// Dependence score in [0, 1] between two value samples. Numeric samples are
/// discretized into equal-frequency bins, everything else by label.
inline double correlate(const std::vector<AttributeValue>& x, const std::vector<AttributeValue>& y)
{
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "correlate: samples differ in length");
    if (x.size() < 2) throw Error(ErrorCode::TooFewSamples, "correlate: need at least 2 samples");
    return normalized_mutual_information(detail::discretize(x), detail::discretize(y));
}

} // namespace iodda
