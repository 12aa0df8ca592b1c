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
#include <map>
#include <numeric>
#include <vector>

#include "iodda/ml/tree.hpp"

namespace iodda::ml {

class RandomForest {
public:
    std::vector<DecisionTree> trees;
    std::size_t feature_subsample = 0;
    std::uint64_t seed = 0;

    /// Majority vote (ties to the lowest class index) or mean.
    double predict(const std::vector<double>& x) const
    {
        if (trees.front().regression) {
            double sum = 0;
            for (const auto& t : trees) sum += t.predict(x);
            return sum / static_cast<double>(trees.size());
        }
        std::vector<std::size_t> votes(trees.front().class_count, 0);
        for (const auto& t : trees) ++votes[static_cast<std::size_t>(t.predict(x))];
        return static_cast<double>(std::max_element(votes.begin(), votes.end()) - votes.begin());
    }
};

/// n_trees CART trees, each on a bootstrap sample (if enabled) with
/// max_features candidate features per split (ceil(sqrt F) when 0).
inline RandomForest train_random_forest(const EncodedDataset& ds, const LearnerConfig& cfg = {})
{
    if (ds.size() == 0) throw Error(ErrorCode::EmptyDataset, "cannot train on an empty dataset");
    if (cfg.n_trees == 0) throw Error(ErrorCode::InvalidConfig, "a forest needs at least one tree");
    RandomForest forest;
    forest.seed = cfg.seed;
    forest.feature_subsample =
        cfg.max_features ? cfg.max_features
                         : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(ds.feature_count()))));
    Rng master(cfg.seed);
    for (std::size_t t = 0; t < cfg.n_trees; ++t) {
        Rng rng(master.next());
        std::vector<std::size_t> idx(ds.size());
        if (cfg.bootstrap)
            for (auto& i : idx) i = rng.below(ds.size());
        else
            std::iota(idx.begin(), idx.end(), 0);
        forest.trees.push_back(detail::TreeBuilder(ds, cfg, forest.feature_subsample, rng).build(idx));
    }
    return forest;
}

/// Fold of every row: stratified round-robin per class for classification,
/// a seeded shuffle for regression.
inline std::vector<std::size_t> assign_folds(const EncodedDataset& ds, std::size_t folds, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<std::size_t> order;
    if (ds.regression()) {
        order.resize(ds.size());
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
    } else {
        std::map<double, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < ds.size(); ++i) by_class[ds.target[i]].push_back(i);
        for (auto& [c, members] : by_class) {
            rng.shuffle(members);
            order.insert(order.end(), members.begin(), members.end());
        }
    }
    std::vector<std::size_t> fold(ds.size());
    for (std::size_t k = 0; k < order.size(); ++k) fold[order[k]] = k % folds;
    return fold;
}

/// Mean k-fold cross-validated accuracy of a random forest.
inline double evaluate_accuracy(const EncodedDataset& ds, const LearnerConfig& cfg, std::size_t folds)
{
    if (folds < 2) throw Error(ErrorCode::TooFewSamples, "cross-validation needs at least 2 folds");
    if (ds.size() < folds)
        throw Error(ErrorCode::TooFewSamples,
                    std::to_string(folds) + " folds requested for " + std::to_string(ds.size()) + " rows");
    auto fold = assign_folds(ds, folds, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    double total = 0;
    for (std::size_t k = 0; k < folds; ++k) {
        std::vector<std::size_t> train, test;
        for (std::size_t i = 0; i < ds.size(); ++i) (fold[i] == k ? test : train).push_back(i);
        auto forest = train_random_forest(ds.subset(train), cfg);
        total += score(forest, ds.subset(test), cfg.regression_tolerance);
    }
    return total / static_cast<double>(folds);
}

} // namespace iodda::ml
