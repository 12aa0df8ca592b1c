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

#include "test_util.hpp"

using namespace iodda;
using namespace testutil;

namespace {

/// Value of each attribute of `object` and its related objects just before
/// `event`, keyed by attribute name.
std::map<std::string, AttributeValue> state_before(const ShiftIndex& index, const DocelLog& log, const ObjectId& object,
                                                   EventIndex event)
{
    std::map<std::string, AttributeValue> out;
    for (const auto& [type, ids] : log.events[event].objects)
        for (const auto& id : ids) {
            const auto* spec = log.schema.find_type(type);
            for (const auto& a : spec->attributes)
                if (auto v = index.value_at(a.name, id, event, id != object || !a.dynamic)) out.emplace(a.name, *v);
        }
    return out;
}

std::size_t replay(const DocelLog& log, const GroundTruthSpec& truth, const std::string& attribute,
                   const std::set<std::string>& activities)
{
    auto index = build_shift_index(log);
    const auto* table = truth.table(attribute);
    std::size_t checked = 0;
    for (const auto& r : log.dynamic_records) {
        if (r.attribute != attribute) continue;
        auto e = *log.event_index(r.event_id);
        if (!activities.count(log.events[e].activity)) continue;
        auto got = table->evaluate(state_before(index, log, r.object_id, e));
        EXPECT_TRUE(got.has_value());
        if (got) {
            EXPECT_EQ(*got, r.value) << r.id;
        }
        ++checked;
    }
    return checked;
}

std::string dir_bytes(const DocelLog& log, const std::string& name)
{
    auto dir = scratch_dir(name);
    write_docel(log, dir);
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) files[entry.path().filename().string()] = slurp(entry.path());
    std::string all;
    for (const auto& [name, content] : files) all += name + "\n" + content;
    return all;
}

} // namespace

TEST(Publication, DefaultsMatchTableScale)
{
    auto log = generate_publication_log({});
    EXPECT_TRUE(validate_log(log).ok());
    EXPECT_EQ(log.events.size(), 800u);
    EXPECT_EQ(log.schema.object_types.size(), 3u);
    EXPECT_EQ(log.count_of_type("Books"), 100u);
    EXPECT_EQ(log.count_of_type("Authors"), 100u);
    EXPECT_EQ(log.count_of_type("Publishers"), 100u);
}

TEST(Publication, EventCountIsEightPerBook)
{
    for (std::size_t books : {1u, 7u, 250u}) {
        PublicationParams p;
        p.num_books = books;
        p.max_authors = 13;
        EXPECT_EQ(generate_publication_log(p).events.size(), 8 * books);
    }
}

TEST(Publication, ReplayReproducesEveryDecision)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PublicationParams p;
        p.rng_seed = seed;
        auto log = generate_publication_log(p);
        auto truth = ground_truth_publication(p);
        EXPECT_EQ(replay(log, truth, "Quality", {"Determine book quality"}), 100u);
        EXPECT_EQ(replay(log, truth, "Publication Status", {"Decide on publication"}), 100u);
    }
}

TEST(Publication, ReviseRuleIsPresent)
{
    auto truth = ground_truth_publication();
    const auto* t = truth.table("Publication Status");
    ASSERT_NE(t, nullptr);
    EXPECT_EQ(t->evaluate({{"Quality", cat("Average")}, {"Compliance", AttributeValue::boolean(true)}}), cat("Revise"));
    EXPECT_EQ(t->evaluate({{"Quality", cat("Average")}, {"Compliance", AttributeValue::boolean(false)}}), cat("No"));
    EXPECT_EQ(truth.drd_edges.size(), 4u);
}

TEST(Publication, ComplianceRate)
{
    PublicationParams p;
    p.num_books = 2000;
    p.prob_compliance = 0.3;
    auto log = generate_publication_log(p);
    std::size_t compliant = 0, total = 0;
    for (const auto& r : log.dynamic_records)
        if (r.attribute == "Compliance") {
            ++total;
            compliant += r.value.as_bool();
        }
    EXPECT_NEAR(static_cast<double>(compliant) / static_cast<double>(total), 0.7, 0.04);
}

TEST(Shipping, PathLengthsAndRefundRate)
{
    ShippingParams p;
    p.num_orders = 500;
    p.prob_refund = 0.5;
    auto log = generate_shipping_log(p);
    EXPECT_TRUE(validate_log(log).ok());
    std::size_t refunds = 0;
    for (const auto& r : log.dynamic_records) refunds += r.attribute == "Refund" && r.value.as_bool();
    EXPECT_EQ(log.events.size(), 13 * p.num_orders + 6 * refunds);
    EXPECT_NEAR(static_cast<double>(refunds) / 500.0, p.prob_refund, 0.05);
    p.prob_refund = 0.2;
    refunds = 0;
    for (const auto& r : generate_shipping_log(p).dynamic_records) refunds += r.attribute == "Refund" && r.value.as_bool();
    EXPECT_NEAR(static_cast<double>(refunds) / 500.0, 0.2, 0.05);
}

TEST(Shipping, DefaultScaleNearTableValue)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ShippingParams p;
        p.rng_seed = seed;
        auto n = static_cast<double>(generate_shipping_log(p).events.size());
        EXPECT_GE(n, 1596 * 0.9);
        EXPECT_LE(n, 1596 * 1.1);
    }
}

TEST(Shipping, ReplayReproducesEveryDecision)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ShippingParams p;
        p.rng_seed = seed;
        auto log = generate_shipping_log(p);
        auto truth = ground_truth_shipping(p);
        EXPECT_EQ(replay(log, truth, "Shipping Method", {"Determine shipping method"}),
                  static_cast<std::size_t>(std::count_if(log.dynamic_records.begin(), log.dynamic_records.end(),
                                                         [](const auto& r) { return r.attribute == "Shipping Method"; })));
        for (const auto& r : log.dynamic_records)
            if (r.attribute == "Order Value") {
                auto index = build_shift_index(log);
                auto q = index.value_at("Quantity", r.object_id, *log.event_index(r.event_id), false);
                ASSERT_TRUE(q);
                EXPECT_DOUBLE_EQ(r.value.as_number(), q->as_number() * p.product_value);
                break;
            }
    }
}

TEST(Shipping, ResourceColumnOnlyWhenConfigured)
{
    ShippingParams p;
    p.num_orders = 5;
    EXPECT_TRUE(generate_shipping_log(p).schema.event_attributes.empty());
    p.resource_lists = {{"Pack order", {"Kim"}}};
    auto log = generate_shipping_log(p);
    ASSERT_EQ(log.schema.event_attributes.size(), 1u);
    for (const auto& e : log.events) EXPECT_EQ(e.attributes.count("Resource") == 1, e.activity == "Pack order");
}

TEST(Generators, SeededDeterminism)
{
    PublicationParams p;
    p.num_books = 30;
    EXPECT_EQ(dir_bytes(generate_publication_log(p), "gen_a"), dir_bytes(generate_publication_log(p), "gen_b"));
    ShippingParams s;
    s.num_orders = 30;
    EXPECT_EQ(dir_bytes(generate_shipping_log(s), "gen_c"), dir_bytes(generate_shipping_log(s), "gen_d"));
    s.rng_seed = 43;
    auto other = generate_shipping_log(s);
    s.rng_seed = 42;
    EXPECT_NE(other, generate_shipping_log(s));
}

TEST(Generators, InvalidParams)
{
    PublicationParams p;
    p.num_books = 0;
    EXPECT_EQ(error_code_of([&] { generate_publication_log(p); }), ErrorCode::InvalidParams);
    p = {};
    p.prob_compliance = 1.5;
    EXPECT_EQ(error_code_of([&] { generate_publication_log(p); }), ErrorCode::InvalidParams);
    ShippingParams s;
    s.product_value = 0;
    EXPECT_EQ(error_code_of([&] { generate_shipping_log(s); }), ErrorCode::InvalidParams);
    s = {};
    s.prob_refund = -0.1;
    EXPECT_EQ(error_code_of([&] { generate_shipping_log(s); }), ErrorCode::InvalidParams);
}
