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

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

using namespace iodda;
using namespace testutil;

namespace {

/// NMI from a contingency table through H(X) + H(Y) - H(X,Y).
long double oracle_nmi(const std::vector<std::vector<int>>& table)
{
    long double n = 0;
    std::vector<long double> rows(table.size(), 0), cols(table[0].size(), 0);
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            n += table[i][j];
            rows[i] += table[i][j];
            cols[j] += table[i][j];
        }
    auto h = [&](long double c) { return c > 0 ? -(c / n) * std::log(c / n) : 0.0L; };
    long double hx = 0, hy = 0, hxy = 0;
    for (auto r : rows) hx += h(r);
    for (auto c : cols) hy += h(c);
    for (const auto& row : table)
        for (auto c : row) hxy += h(c);
    long double denom = std::max(hx, hy);
    if (denom <= 1e-15L) return 0;
    return (hx + hy - hxy) / denom;
}

void expand(const std::vector<std::vector<int>>& table, std::vector<int>& x, std::vector<int>& y)
{
    x.clear();
    y.clear();
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table[i].size(); ++j)
            for (int c = 0; c < table[i][j]; ++c) {
                x.push_back(static_cast<int>(i));
                y.push_back(static_cast<int>(j));
            }
}

void check_all_tables(std::size_t dim, int max_count)
{
    const std::size_t cells = dim * dim;
    std::vector<int> counts(cells, 0), x, y;
    std::size_t checked = 0;
    while (true) {
        std::vector<std::vector<int>> table(dim, std::vector<int>(dim));
        for (std::size_t c = 0; c < cells; ++c) table[c / dim][c % dim] = counts[c];
        expand(table, x, y);
        if (x.size() >= 2) {
            double got = normalized_mutual_information(x, y);
            ASSERT_NEAR(got, static_cast<double>(oracle_nmi(table)), 1e-9);
            ASSERT_GE(got, 0.0);
            ASSERT_LE(got, 1.0);
            ++checked;
        }
        std::size_t k = 0;
        while (k < cells && counts[k] == max_count) counts[k++] = 0;
        if (k == cells) break;
        ++counts[k];
    }
    EXPECT_GT(checked, 0u);
}

} // namespace

TEST(Nmi, AllTwoByTwoTablesUpToFour) { check_all_tables(2, 4); }

TEST(Nmi, AllThreeByThreeTablesUpToFour) { check_all_tables(3, 4); }

TEST(Nmi, Extremes)
{
    EXPECT_DOUBLE_EQ(normalized_mutual_information({0, 1, 0, 1}, {5, 7, 5, 7}), 1.0);
    EXPECT_DOUBLE_EQ(normalized_mutual_information({0, 0, 1, 1}, {0, 1, 0, 1}), 0.0);
    EXPECT_DOUBLE_EQ(normalized_mutual_information({3, 3, 3}, {3, 3, 3}), 0.0);
    // Constant x, varying y: no information.
    EXPECT_DOUBLE_EQ(normalized_mutual_information({1, 1, 1, 1}, {0, 1, 2, 3}), 0.0);
}

TEST(Nmi, SymmetricProperty)
{
    std::mt19937 gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 2 + gen() % 40;
        std::vector<int> x(n), y(n);
        for (auto& v : x) v = static_cast<int>(gen() % 4);
        for (auto& v : y) v = static_cast<int>(gen() % 3);
        EXPECT_NEAR(normalized_mutual_information(x, y), normalized_mutual_information(y, x), 1e-12);
        // Relabelling is invisible.
        std::vector<int> x2(x);
        for (auto& v : x2) v = 10 - 3 * v;
        EXPECT_NEAR(normalized_mutual_information(x, y), normalized_mutual_information(x2, y), 1e-12);
    }
}

TEST(Nmi, Errors)
{
    EXPECT_EQ(error_code_of([] { normalized_mutual_information({1, 2}, {1}); }), ErrorCode::LengthMismatch);
    EXPECT_EQ(error_code_of([] { normalized_mutual_information({1}, {1}); }), ErrorCode::TooFewSamples);
    EXPECT_EQ(error_code_of([] { correlate({num(1)}, {num(2)}); }), ErrorCode::TooFewSamples);
    EXPECT_EQ(error_code_of([] { correlate({num(1), num(2)}, {num(2)}); }), ErrorCode::LengthMismatch);
}

TEST(Bins, EqualFrequency)
{
    // n = 9 -> k = 3 bins of three values each.
    std::vector<double> v{9, 1, 5, 2, 8, 3, 7, 4, 6};
    EXPECT_EQ(equal_frequency_bins(v), (std::vector<int>{2, 0, 1, 0, 2, 0, 2, 1, 1}));
    // Ties never split across bins.
    auto tied = equal_frequency_bins({1, 1, 1, 1, 2});
    EXPECT_EQ(tied[0], tied[3]);
    EXPECT_NE(tied[0], tied[4]);
}

TEST(Bins, CountCapAtTen)
{
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(i);
    auto b = equal_frequency_bins(v);
    EXPECT_EQ(*std::max_element(b.begin(), b.end()), 9);
    EXPECT_EQ(std::count(b.begin(), b.end(), 0), 100);
}

TEST(Correlate, Monotone)
{
    std::vector<AttributeValue> x, y, labels;
    for (int i = 0; i < 100; ++i) {
        x.push_back(num(i));
        y.push_back(num(3 * i + 1));
        labels.push_back(cat(i < 50 ? "low" : "high"));
    }
    EXPECT_NEAR(correlate(x, y), 1.0, 1e-12);
    EXPECT_GT(correlate(x, labels), 0.25);
    EXPECT_NEAR(correlate(labels, labels), 1.0, 1e-12);
}
