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
#include <cstdint>
#include <numeric>
#include <vector>

#include "iodda/ml/dataset.hpp"
#include "iodda/rng.hpp"

namespace iodda::ml {

struct LearnerConfig {
    std::size_t n_trees = 100;
    bool bootstrap = true;
    std::size_t max_features = 0; ///< 0: ceil(sqrt(#features)) in forests, all in single trees
    std::size_t max_depth = 0;    ///< 0: unlimited
    std::size_t min_leaf = 1;
    std::size_t cv_folds = 5;
    double regression_tolerance = 0.05;
    std::uint64_t seed = 42;
};

struct TreeNode {
    int feature = -1; ///< -1 for leaves
    double threshold = 0; ///< x <= threshold goes left
    int left = -1;
    int right = -1;
    double value = 0; ///< class index or mean
    std::size_t samples = 0;
    std::vector<std::size_t> class_counts;

    bool leaf() const noexcept { return feature < 0; }
};

class DecisionTree {
public:
    std::vector<TreeNode> nodes; ///< nodes[0] is the root
    bool regression = false;
    std::size_t feature_count = 0;
    std::size_t class_count = 0;
    std::size_t depth = 0;
    double training_accuracy = 0;

    std::size_t leaf_of(const std::vector<double>& x) const
    {
        std::size_t i = 0;
        while (!nodes[i].leaf()) i = static_cast<std::size_t>(x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right);
        return i;
    }

    double predict(const std::vector<double>& x) const { return nodes[leaf_of(x)].value; }

    friend bool operator==(const DecisionTree& a, const DecisionTree& b)
    {
        if (a.nodes.size() != b.nodes.size()) return false;
        for (std::size_t i = 0; i < a.nodes.size(); ++i) {
            const auto &x = a.nodes[i], &y = b.nodes[i];
            if (x.feature != y.feature || x.threshold != y.threshold || x.left != y.left || x.right != y.right ||
                x.value != y.value || x.samples != y.samples)
                return false;
        }
        return true;
    }
};

namespace detail {

class TreeBuilder {
public:
    TreeBuilder(const EncodedDataset& ds, const LearnerConfig& cfg, std::size_t max_features, Rng& rng)
        : ds_(ds), cfg_(cfg), max_features_(max_features), rng_(rng)
    {
        tree_.regression = ds.regression();
        tree_.feature_count = ds.feature_count();
        tree_.class_count = ds.encodings.class_count();
    }

    DecisionTree build(std::vector<std::size_t> idx)
    {
        grow(idx, 0);
        return std::move(tree_);
    }

private:
    struct Split {
        int feature = -1;
        double threshold = 0;
        double cost = 0;
    };

    int grow(std::vector<std::size_t>& idx, std::size_t depth)
    {
        const int id = static_cast<int>(tree_.nodes.size());
        tree_.nodes.emplace_back();
        tree_.depth = std::max(tree_.depth, depth);
        fill_leaf(tree_.nodes.back(), idx);
        if (pure(idx) || idx.size() < 2 * cfg_.min_leaf || (cfg_.max_depth && depth >= cfg_.max_depth)) return id;

        auto split = best_split(idx);
        if (split.feature < 0) return id;
        std::vector<std::size_t> l, r;
        for (auto i : idx) (ds_.rows[i][split.feature] <= split.threshold ? l : r).push_back(i);
        idx.clear();
        idx.shrink_to_fit();
        tree_.nodes[id].feature = split.feature;
        tree_.nodes[id].threshold = split.threshold;
        int left = grow(l, depth + 1);
        int right = grow(r, depth + 1);
        tree_.nodes[id].left = left;
        tree_.nodes[id].right = right;
        return id;
    }

    void fill_leaf(TreeNode& node, const std::vector<std::size_t>& idx) const
    {
        node.samples = idx.size();
        if (tree_.regression) {
            double sum = 0;
            for (auto i : idx) sum += ds_.target[i];
            node.value = idx.empty() ? 0 : sum / static_cast<double>(idx.size());
            return;
        }
        node.class_counts.assign(tree_.class_count, 0);
        for (auto i : idx) ++node.class_counts[static_cast<std::size_t>(ds_.target[i])];
        node.value = static_cast<double>(
            std::max_element(node.class_counts.begin(), node.class_counts.end()) - node.class_counts.begin());
    }

    bool pure(const std::vector<std::size_t>& idx) const
    {
        for (auto i : idx)
            if (ds_.target[i] != ds_.target[idx.front()]) return false;
        return true;
    }

    Split best_split(const std::vector<std::size_t>& idx)
    {
        const std::size_t f_total = ds_.feature_count();
        std::vector<std::size_t> order(f_total);
        std::iota(order.begin(), order.end(), 0);
        std::size_t m = max_features_ == 0 ? f_total : std::min(max_features_, f_total);
        if (m < f_total) rng_.shuffle(order);
        std::vector<std::size_t> first(order.begin(), order.begin() + static_cast<long>(m));
        std::vector<std::size_t> rest(order.begin() + static_cast<long>(m), order.end());
        std::sort(first.begin(), first.end());
        std::sort(rest.begin(), rest.end());

        Split best;
        for (auto f : first) consider(idx, f, best);
        // Like common CART implementations, keep looking past constant features.
        if (best.feature < 0)
            for (auto f : rest) consider(idx, f, best);
        return best;
    }

    void consider(const std::vector<std::size_t>& idx, std::size_t f, Split& best) const
    {
        std::vector<std::size_t> sorted = idx;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](std::size_t a, std::size_t b) { return ds_.rows[a][f] < ds_.rows[b][f]; });
        const std::size_t n = sorted.size();
        const std::size_t k = tree_.class_count;
        std::vector<double> left_counts(k, 0), right_counts(k, 0);
        double lsum = 0, lsq = 0, rsum = 0, rsq = 0;
        for (auto i : sorted) {
            const double y = ds_.target[i];
            if (tree_.regression) {
                rsum += y;
                rsq += y * y;
            } else {
                right_counts[static_cast<std::size_t>(y)] += 1;
            }
        }
        auto gini_mass = [](const std::vector<double>& c, double total) {
            // total * gini
            double s = 0;
            for (double v : c) s += v * v;
            return total - s / total;
        };
        for (std::size_t pos = 0; pos + 1 < n; ++pos) {
            const double y = ds_.target[sorted[pos]];
            if (tree_.regression) {
                lsum += y;
                lsq += y * y;
                rsum -= y;
                rsq -= y * y;
            } else {
                left_counts[static_cast<std::size_t>(y)] += 1;
                right_counts[static_cast<std::size_t>(y)] -= 1;
            }
            const double a = ds_.rows[sorted[pos]][f], b = ds_.rows[sorted[pos + 1]][f];
            if (!(a < b)) continue;
            const std::size_t nl = pos + 1, nr = n - nl;
            if (nl < cfg_.min_leaf || nr < cfg_.min_leaf) continue;
            double cost;
            if (tree_.regression)
                cost = (lsq - lsum * lsum / double(nl)) + (rsq - rsum * rsum / double(nr));
            else
                cost = gini_mass(left_counts, double(nl)) + gini_mass(right_counts, double(nr));
            if (best.feature < 0 || cost < best.cost - 1e-9) {
                best.feature = static_cast<int>(f);
                best.threshold = a + (b - a) / 2;
                best.cost = cost;
            }
        }
    }

    const EncodedDataset& ds_;
    const LearnerConfig& cfg_;
    std::size_t max_features_;
    Rng& rng_;
    DecisionTree tree_;
};

inline bool close_enough(double pred, double truth, double tolerance)
{
    return std::abs(pred - truth) <= tolerance * std::max(std::abs(truth), 1e-12);
}

} // namespace detail

/// Fraction of rows predicted correctly; regression counts predictions within
/// the relative tolerance.
template <class Model>
double score(const Model& model, const EncodedDataset& ds, double regression_tolerance = 0.05)
{
    if (ds.size() == 0) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        double p = model.predict(ds.rows[i]);
        hits += ds.regression() ? detail::close_enough(p, ds.target[i], regression_tolerance) : p == ds.target[i];
    }
    return static_cast<double>(hits) / static_cast<double>(ds.size());
}

/// Greedy CART tree over all rows. Ties between splits go to the lower
/// feature index, then the lower threshold.
inline DecisionTree train_decision_tree(const EncodedDataset& ds, const LearnerConfig& cfg = {})
{
    if (ds.size() == 0) throw Error(ErrorCode::EmptyDataset, "cannot train on an empty dataset");
    Rng rng(cfg.seed);
    std::vector<std::size_t> idx(ds.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto tree = detail::TreeBuilder(ds, cfg, cfg.max_features, rng).build(idx);
    tree.training_accuracy = score(tree, ds, cfg.regression_tolerance);
    return tree;
}

} // namespace iodda::ml
