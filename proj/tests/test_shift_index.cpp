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

const DocelLog& snippet()
{
    static const DocelLog log = parse_docel(fixture("snippet"));
    return log;
}

std::vector<std::string> ids(const DocelLog& log, const std::vector<EventIndex>& events)
{
    std::vector<std::string> out;
    for (auto e : events) out.push_back(log.events[e].id);
    return out;
}

/// n Books; the first `shifted` of them get attribute Q set by "Judge",
/// alternating between two values.
DocelLog judged_books(std::size_t n, std::size_t shifted)
{
    ToyLog t;
    t.type("Books", {AttributeSpec{"Q", ValueKind::Categorical, true}});
    for (std::size_t i = 0; i < n; ++i) t.object("b" + std::to_string(i), "Books");
    for (std::size_t i = 0; i < n; ++i) {
        auto id = "b" + std::to_string(i);
        t.event("Write", {{"Books", {id}}});
        auto e = t.event("Judge", {{"Books", {id}}});
        if (i < shifted) t.record("Q", cat(i % 2 ? "good" : "bad"), e, id);
    }
    return t.finish();
}

} // namespace

TEST(ShiftIndex, SnippetShifts)
{
    const auto& log = snippet();
    auto index = build_shift_index(log);
    EXPECT_EQ(ids(log, index.shifts.at({"Publication Status", "Decide on publication", "b3"})),
              std::vector<std::string>{"e13"});
    EXPECT_EQ(ids(log, index.shifts.at({"Publication Status", "Submit book manuscript", "b2"})),
              std::vector<std::string>{"e4"});
    EXPECT_EQ(index.shifts.count({"Publication Status", "Decide on publication", "b2"}), 0u);
    EXPECT_EQ(index.shifts.size(), 3u);
}

TEST(ShiftIndex, StaticOriginIsFirstTraceEvent)
{
    const auto& log = snippet();
    auto index = build_shift_index(log);
    EXPECT_EQ(log.events[index.static_origin.at({"Publisher Specialty Genre", "p90"})].id, "e4");
    EXPECT_EQ(log.events[index.static_origin.at({"Name", "p86"})].id, "e7");
    // p44 never takes part in an event.
    EXPECT_EQ(index.static_origin.count({"Name", "p44"}), 0u);
    const auto& s = index.series("Publisher Specialty Genre", "Submit book manuscript", "p90");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].value, cat("Fantasy"));
}

TEST(ShiftIndex, RelatedObjects)
{
    const auto& log = snippet();
    auto index = build_shift_index(log);
    EXPECT_EQ(related_objects(index, log, "b2", "Authors"), (ObjectSet{"a951"}));
    EXPECT_EQ(related_objects(index, log, "b2", "Publishers"), (ObjectSet{"p90"}));
    EXPECT_EQ(related_objects(index, log, "b2", "Books"), (ObjectSet{"b2"}));
    EXPECT_TRUE(related_objects(index, log, "a155", "Publishers").count("p86"));
    EXPECT_TRUE(related_objects(index, log, "p44", "Books").empty());
    EXPECT_EQ(error_code_of([&] { related_objects(index, log, "zz", "Books"); }), ErrorCode::UnknownObject);
}

TEST(ShiftIndex, ValueAtInclusiveAndExclusive)
{
    const auto& log = snippet();
    auto index = build_shift_index(log);
    auto e13 = *log.event_index("e13"), e12 = *log.event_index("e12");
    EXPECT_EQ(index.value_at("Publication Status", "b3", e13, true), cat("Revise"));
    EXPECT_EQ(index.value_at("Publication Status", "b3", e13, false), cat("Pending"));
    EXPECT_EQ(index.value_at("Publication Status", "b3", e12, true), cat("Pending"));
    EXPECT_FALSE(index.value_at("Publication Status", "b3", *log.event_index("e5"), true));
}

TEST(Candidates, MinShiftThreshold)
{
    {
        auto log = judged_books(20, 10);
        auto index = build_shift_index(log);
        auto c = candidate_variables(index, log, 0.2);
        EXPECT_TRUE(c.is_output("Judge", {"Q", "Books"}));
    }
    {
        auto log = judged_books(200, 10);
        auto index = build_shift_index(log);
        auto c = candidate_variables(index, log, 0.2);
        EXPECT_FALSE(c.is_output("Judge", {"Q", "Books"}));
        EXPECT_TRUE(c.is_input("Judge", {"Q", "Books"}));
    }
}

TEST(Candidates, ConstantAttributeIsNeither)
{
    ToyLog t;
    t.type("Books", {AttributeSpec{"Q", ValueKind::Categorical, true}});
    for (int i = 0; i < 5; ++i) {
        auto id = "b" + std::to_string(i);
        t.object(id, "Books");
        t.record("Q", cat("same"), t.event("Judge", {{"Books", {id}}}), id);
    }
    auto log = t.finish();
    auto index = build_shift_index(log);
    auto c = candidate_variables(index, log, 0.0);
    EXPECT_FALSE(c.is_output("Judge", {"Q", "Books"}));
    EXPECT_FALSE(c.is_input("Judge", {"Q", "Books"}));
}

TEST(Candidates, TextAttributesExcluded)
{
    const auto& log = snippet();
    auto index = build_shift_index(log);
    auto c = candidate_variables(index, log, 0.0);
    for (const auto& [activity, vars] : c.inputs) EXPECT_FALSE(vars.count({"Name", "Publishers"})) << activity;
    EXPECT_TRUE(c.is_input("Submit book manuscript", {"Publisher Specialty Genre", "Publishers"}));
}

TEST(Enumerate, SameAttributeSetByTwoActivities)
{
    ToyLog t;
    t.type("Books", {AttributeSpec{"Publication Status", ValueKind::Categorical, true}});
    for (int i = 0; i < 4; ++i) {
        auto id = "b" + std::to_string(i);
        t.object(id, "Books");
        t.record("Publication Status", cat(i % 2 ? "Pending" : "Draft"), t.event("Submit book manuscript", {{"Books", {id}}}),
                 id);
        t.record("Publication Status", cat(i % 2 ? "Yes" : "No"), t.event("Decide on publication", {{"Books", {id}}}), id);
    }
    auto log = t.finish();
    auto index = build_shift_index(log);
    auto nodes = enumerate_ataots(index, candidate_variables(index, log, 0.2), 3);
    std::vector<Ataots> expected{{"Publication Status", "Decide on publication", "Books", 1},
                                 {"Publication Status", "Submit book manuscript", "Books", 1}};
    EXPECT_EQ(nodes, expected);
}

TEST(Enumerate, ShiftNumbersBoundedByDataAndMaxShift)
{
    ToyLog t;
    t.type("Orders", {AttributeSpec{"V", ValueKind::Numeric, true}});
    for (int i = 0; i < 3; ++i) {
        auto id = "o" + std::to_string(i);
        t.object(id, "Orders");
        for (int loop = 0; loop < 3; ++loop) t.record("V", num(i * 10 + loop), t.event("Adjust", {{"Orders", {id}}}), id);
    }
    auto log = t.finish();
    auto index = build_shift_index(log);
    auto candidates = candidate_variables(index, log, 0.2);
    auto three = enumerate_ataots(index, candidates, 3);
    ASSERT_EQ(three.size(), 3u);
    for (std::size_t n = 0; n < 3; ++n) {
        EXPECT_EQ(three[n].shift, n + 1);
        EXPECT_EQ(three[n].attribute, "V");
    }
    EXPECT_EQ(enumerate_ataots(index, candidates, 1).size(), 1u);
    EXPECT_EQ(enumerate_ataots(index, candidates, 10).size(), 3u);
    EXPECT_EQ(traces_with_shift(index, three[2]).objects, (ObjectSet{"o0", "o1", "o2"}));
}

TEST(ShiftIndexProperty, MatchesNaiveScan)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto log = random_log(seed);
        auto index = build_shift_index(log);
        // Naive oracle: walk events in order and collect every record written there.
        std::map<ShiftKey, std::vector<EventIndex>> naive;
        for (EventIndex e = 0; e < log.events.size(); ++e)
            for (const auto& r : log.dynamic_records)
                if (r.event_id == log.events[e].id) naive[{r.attribute, log.events[e].activity, r.object_id}].push_back(e);
        ASSERT_EQ(index.shifts, naive) << "seed " << seed;

        for (const auto& o : log.objects) {
            for (const auto& [name, value] : o.static_attributes) {
                const auto& trace = log.trace_of(o.id);
                if (trace.empty()) continue;
                EXPECT_EQ(index.static_origin.at({name, o.id}), trace.front());
            }
        }
    }
}

TEST(ShiftIndexProperty, ValueAtMatchesLatestRecord)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto log = random_log(seed);
        auto index = build_shift_index(log);
        for (const auto& o : log.objects)
            for (EventIndex e = 0; e < log.events.size(); ++e)
                for (const std::string attr : {"X", "Y", "Z"}) {
                    std::optional<AttributeValue> incl, excl;
                    for (const auto& r : log.dynamic_records) {
                        if (r.object_id != o.id || r.attribute != attr) continue;
                        auto pos = *log.event_index(r.event_id);
                        if (pos <= e) incl = r.value;
                        if (pos < e) excl = r.value;
                    }
                    EXPECT_EQ(index.value_at(attr, o.id, e, true), incl);
                    EXPECT_EQ(index.value_at(attr, o.id, e, false), excl);
                }
    }
}

TEST(ShiftIndexProperty, TraceSetsShrinkWithShiftNumber)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto log = random_log(seed);
        auto index = build_shift_index(log);
        auto candidates = candidate_variables(index, log, 0.0);
        for (const auto& node : enumerate_ataots(index, candidates, 5)) {
            auto t = traces_with_shift(index, node).objects;
            EXPECT_FALSE(t.empty());
            auto next = node;
            ++next.shift;
            auto t2 = traces_with_shift(index, next).objects;
            EXPECT_TRUE(std::includes(t.begin(), t.end(), t2.begin(), t2.end()));
            for (const auto& o : t) EXPECT_GE(index.series(node.attribute, node.activity, o).size(), node.shift);
        }
    }
}

TEST(ShiftIndexProperty, OutputsShrinkAsMinShiftGrows)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto log = random_log(seed);
        auto index = build_shift_index(log);
        auto prev = candidate_variables(index, log, 0.0);
        for (double m : {0.1, 0.3, 0.5, 0.8, 1.0}) {
            auto cur = candidate_variables(index, log, m);
            EXPECT_EQ(cur.inputs, prev.inputs);
            for (const auto& [activity, vars] : cur.outputs)
                for (const auto& v : vars) {
                    EXPECT_TRUE(prev.is_output(activity, v));
                    EXPECT_TRUE(cur.is_input(activity, v)) << "outputs must be inputs";
                }
            prev = cur;
        }
    }
}
