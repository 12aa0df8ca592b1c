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

#include <chrono>
#include <optional>
#include <map>
#include <string>
#include <vector>

#include "iodda/docel.hpp"
#include "iodda/rng.hpp"

namespace iodda {

struct IntervalSeconds {
    std::int64_t min = 60;
    std::int64_t max = 3600;
};

struct PublicationParams {
    std::size_t max_authors = 100;
    std::size_t max_published_books = 9;
    std::vector<std::string> genre_list{"Biography", "Fantasy", "Mystery", "Romance", "Science Fiction"};
    std::size_t max_publishers = 100;
    std::size_t num_books = 100;
    Timestamp start_time = parse_timestamp("2022-01-01 08:00:00");
    IntervalSeconds event_interval{};
    double prob_compliance = 0.3; ///< probability that a manuscript is NOT compliant
    std::size_t publication_threshold = 5;
    std::uint64_t rng_seed = 42;

    void validate() const
    {
        if (max_authors < 1 || max_publishers < 1 || num_books < 1 || genre_list.empty())
            throw Error(ErrorCode::InvalidParams, "counts must be at least 1 and the genre list non-empty");
        if (!(prob_compliance >= 0 && prob_compliance <= 1))
            throw Error(ErrorCode::InvalidParams, "prob_compliance must lie in [0, 1]");
        if (event_interval.min < 1 || event_interval.max < event_interval.min)
            throw Error(ErrorCode::InvalidParams, "event interval must satisfy 1 <= min <= max");
    }
};

struct ShippingParams {
    double product_value = 4;
    std::size_t num_customers = 50;
    std::map<std::string, std::vector<std::string>> resource_lists; ///< activity -> resources; empty: no Resource column
    Timestamp start_time = parse_timestamp("2022-01-01 08:00:00");
    IntervalSeconds event_interval{};
    double order_value_threshold = 100;
    std::size_t num_orders = 100;
    double prob_refund = 0.5;
    std::size_t max_order_quantity = 35;
    std::uint64_t rng_seed = 42;

    void validate() const
    {
        if (!(product_value > 0)) throw Error(ErrorCode::InvalidParams, "product_value must be positive");
        if (num_customers < 1 || num_orders < 1 || max_order_quantity < 1)
            throw Error(ErrorCode::InvalidParams, "counts must be at least 1");
        if (!(prob_refund >= 0 && prob_refund <= 1)) throw Error(ErrorCode::InvalidParams, "prob_refund must lie in [0, 1]");
        if (event_interval.min < 1 || event_interval.max < event_interval.min)
            throw Error(ErrorCode::InvalidParams, "event interval must satisfy 1 <= min <= max");
    }
};

namespace detail {

inline const std::vector<std::string>& first_names()
{
    static const std::vector<std::string> v{"Anna", "Bram", "Chloe", "Daan", "Elise", "Finn", "Greet", "Hugo",
                                            "Ines", "Jonas", "Lotte", "Milan", "Noor", "Oscar", "Roos", "Wout"};
    return v;
}

inline const std::vector<std::string>& last_names()
{
    static const std::vector<std::string> v{"Claes", "De Smet", "Dubois", "Janssens", "Lambert", "Maes",
                                            "Mertens", "Peeters", "Willems", "Wouters"};
    return v;
}

inline std::string person_name(Rng& rng) { return rng.pick(first_names()) + " " + rng.pick(last_names()); }

/// Appends events and records with sequential ids and increasing timestamps.
class LogBuilder {
public:
    LogBuilder(DocelLog& log, Rng& rng, Timestamp start, IntervalSeconds interval)
        : log_(log), rng_(rng), now_(start), interval_(interval)
    {
    }

    std::string event(const std::string& activity, std::map<std::string, std::vector<ObjectId>> objects,
                      std::map<std::string, AttributeValue> attributes = {})
    {
        now_ += std::chrono::seconds(rng_.uniform_int(interval_.min, interval_.max));
        Event e;
        e.id = "e" + std::to_string(log_.events.size() + 1);
        e.activity = activity;
        e.timestamp = now_;
        e.objects = std::move(objects);
        e.attributes = std::move(attributes);
        log_.events.push_back(std::move(e));
        return log_.events.back().id;
    }

    void record(const std::string& prefix, const std::string& attribute, AttributeValue value, const std::string& event_id,
                const ObjectId& object)
    {
        auto& n = counters_[prefix];
        log_.dynamic_records.push_back({prefix + std::to_string(++n), attribute, std::move(value), event_id, object});
    }

private:
    DocelLog& log_;
    Rng& rng_;
    Timestamp now_;
    IntervalSeconds interval_;
    std::map<std::string, std::size_t> counters_;
};

} // namespace detail

/// Book publication process: eight activities per book, quality decided from
/// the review score and the author's publication record, publication from
/// quality and compliance.
inline DocelLog generate_publication_log(const PublicationParams& p)
{
    p.validate();
    Rng rng(p.rng_seed);
    DocelLog log;
    log.schema.object_types = {
        {"Authors",
         {{"Name", ValueKind::Text, false},
          {"Author Specialty Genre", ValueKind::Categorical, false},
          {"Number of published books", ValueKind::Numeric, false}}},
        {"Books",
         {{"Genre", ValueKind::Categorical, false},
          {"Number of pages", ValueKind::Numeric, false},
          {"Publication Status", ValueKind::Categorical, true},
          {"Review Score", ValueKind::Numeric, true},
          {"Quality", ValueKind::Categorical, true},
          {"Compliance", ValueKind::Boolean, true}}},
        {"Publishers",
         {{"Name", ValueKind::Text, false}, {"Publisher Specialty Genre", ValueKind::Categorical, false}}},
    };

    std::vector<double> published(p.max_authors);
    for (std::size_t i = 0; i < p.max_authors; ++i) {
        published[i] = static_cast<double>(rng.uniform_int(0, static_cast<std::int64_t>(p.max_published_books)));
        log.objects.push_back({"a" + std::to_string(i + 1),
                               "Authors",
                               {{"Name", AttributeValue::text(detail::person_name(rng))},
                                {"Author Specialty Genre", AttributeValue::categorical(rng.pick(p.genre_list))},
                                {"Number of published books", AttributeValue::numeric(published[i])}}});
    }
    for (std::size_t i = 0; i < p.max_publishers; ++i)
        log.objects.push_back({"p" + std::to_string(i + 1),
                               "Publishers",
                               {{"Name", AttributeValue::text("Publisher " + rng.pick(detail::last_names()) + " " +
                                                              std::to_string(i + 1))},
                                {"Publisher Specialty Genre", AttributeValue::categorical(rng.pick(p.genre_list))}}});

    detail::LogBuilder b(log, rng, p.start_time, p.event_interval);
    for (std::size_t i = 0; i < p.num_books; ++i) {
        const std::string book = "b" + std::to_string(i + 1);
        const std::size_t author_index = i % p.max_authors;
        const std::string author = "a" + std::to_string(author_index + 1);
        const std::string publisher = "p" + std::to_string(rng.below(p.max_publishers) + 1);
        log.objects.push_back({book,
                               "Books",
                               {{"Genre", AttributeValue::categorical(rng.pick(p.genre_list))},
                                {"Number of pages", AttributeValue::numeric(double(rng.uniform_int(100, 600)))}}});

        const std::vector<ObjectId> A{author}, B{book}, P{publisher};
        b.event("Find inspiration", {{"Authors", A}});
        b.event("Write book", {{"Authors", A}, {"Books", B}});
        auto e = b.event("Submit book manuscript", {{"Authors", A}, {"Books", B}, {"Publishers", P}});
        b.record("ps", "Publication Status", AttributeValue::categorical("Pending"), e, book);

        const bool compliant = rng.uniform01() >= p.prob_compliance;
        e = b.event("Read manuscript details", {{"Books", B}, {"Publishers", P}});
        b.record("cp", "Compliance", AttributeValue::boolean(compliant), e, book);

        const auto score = static_cast<double>(rng.uniform_int(0, 10));
        e = b.event("Read manuscript", {{"Books", B}, {"Publishers", P}});
        b.record("rs", "Review Score", AttributeValue::numeric(score), e, book);

        std::string quality;
        if (published[author_index] >= double(p.publication_threshold))
            quality = score >= 6 ? "Excellent" : "Average";
        else
            quality = score >= 7 ? "Excellent" : "Bad";
        e = b.event("Determine book quality", {{"Authors", A}, {"Books", B}, {"Publishers", P}});
        b.record("ql", "Quality", AttributeValue::categorical(quality), e, book);

        std::string status = "No";
        if (compliant && quality == "Excellent") status = "Yes";
        if (compliant && quality == "Average") status = "Revise";
        e = b.event("Decide on publication", {{"Books", B}, {"Publishers", P}});
        b.record("ps", "Publication Status", AttributeValue::categorical(status), e, book);

        b.event("Communicate decision", {{"Authors", A}, {"Books", B}, {"Publishers", P}});
    }
    log.canonicalize();
    return log;
}

/// Order-to-delivery process with an optional refund leg. Shipping method:
/// refund -> Express Courier; important customer or order value at or above
/// the threshold -> Courier; otherwise Mail.
inline DocelLog generate_shipping_log(const ShippingParams& p)
{
    p.validate();
    Rng rng(p.rng_seed);
    DocelLog log;
    log.schema.object_types = {
        {"Customers",
         {{"Name", ValueKind::Text, false},
          {"Bank Account", ValueKind::Text, false},
          {"Importance", ValueKind::Categorical, false}}},
        {"Orders",
         {{"Quantity", ValueKind::Numeric, true},
          {"Order Value", ValueKind::Numeric, true},
          {"Shipping Method", ValueKind::Categorical, true},
          {"Refund", ValueKind::Boolean, true}}},
        {"Product Types", {{"Name", ValueKind::Text, false}, {"Product Value", ValueKind::Numeric, false}}},
    };
    const bool with_resources = !p.resource_lists.empty();
    if (with_resources) log.schema.event_attributes.push_back({"Resource", ValueKind::Text, false});

    std::vector<bool> important(p.num_customers);
    for (std::size_t i = 0; i < p.num_customers; ++i) {
        important[i] = rng.bernoulli(0.5);
        std::string account = "BE";
        for (int d = 0; d < 14; ++d) account += static_cast<char>('0' + rng.below(10));
        log.objects.push_back({"c" + std::to_string(i + 1),
                               "Customers",
                               {{"Name", AttributeValue::text(detail::person_name(rng))},
                                {"Bank Account", AttributeValue::text(account)},
                                {"Importance", AttributeValue::categorical(important[i] ? "High" : "Low")}}});
    }
    const std::string product = "pt1";
    log.objects.push_back({product,
                           "Product Types",
                           {{"Name", AttributeValue::text("Product 1")},
                            {"Product Value", AttributeValue::numeric(p.product_value)}}});

    detail::LogBuilder b(log, rng, p.start_time, p.event_interval);
    auto event = [&](const std::string& activity, std::map<std::string, std::vector<ObjectId>> objects) {
        std::map<std::string, AttributeValue> attrs;
        if (auto it = p.resource_lists.find(activity); it != p.resource_lists.end() && !it->second.empty())
            attrs.emplace("Resource", AttributeValue::text(rng.pick(it->second)));
        return b.event(activity, std::move(objects), std::move(attrs));
    };

    for (std::size_t i = 0; i < p.num_orders; ++i) {
        const std::string order = "o" + std::to_string(i + 1);
        const std::size_t ci = rng.below(p.num_customers);
        const std::string customer = "c" + std::to_string(ci + 1);
        log.objects.push_back({order, "Orders", {}});
        const std::vector<ObjectId> C{customer}, O{order}, P{product};

        const auto quantity = static_cast<double>(rng.uniform_int(1, static_cast<std::int64_t>(p.max_order_quantity)));
        auto e = event("Place order", {{"Customers", C}, {"Orders", O}, {"Product Types", P}});
        b.record("qt", "Quantity", AttributeValue::numeric(quantity), e, order);
        b.record("rf", "Refund", AttributeValue::boolean(false), e, order);
        event("Receive order", {{"Orders", O}});
        event("Check product availability", {{"Orders", O}, {"Product Types", P}});

        const double value = quantity * p.product_value;
        e = event("Determine order value", {{"Orders", O}, {"Product Types", P}});
        b.record("ov", "Order Value", AttributeValue::numeric(value), e, order);
        event("Verify payment details", {{"Customers", C}, {"Orders", O}});
        event("Confirm shipping information", {{"Customers", C}, {"Orders", O}});

        const std::string method = important[ci] || value >= p.order_value_threshold ? "Courier" : "Mail";
        e = event("Determine shipping method", {{"Customers", C}, {"Orders", O}});
        b.record("sm", "Shipping Method", AttributeValue::categorical(method), e, order);
        event("Send invoice", {{"Customers", C}, {"Orders", O}});
        event("Pack order", {{"Orders", O}});
        event("Ship order", {{"Orders", O}});
        event("Deliver package", {{"Customers", C}, {"Orders", O}});
        event("Evaluate satisfaction", {{"Customers", C}, {"Orders", O}});

        if (!rng.bernoulli(p.prob_refund)) {
            event("File order", {{"Orders", O}});
            continue;
        }
        e = event("Ask refund", {{"Customers", C}, {"Orders", O}});
        b.record("rf", "Refund", AttributeValue::boolean(true), e, order);
        e = event("Determine shipping method", {{"Customers", C}, {"Orders", O}});
        b.record("sm", "Shipping Method", AttributeValue::categorical("Express Courier"), e, order);
        event("Send package back", {{"Orders", O}});
        event("Receive returned package", {{"Orders", O}});
        event("Pay refund", {{"Customers", C}, {"Orders", O}});
        event("Confirm refund", {{"Customers", C}, {"Orders", O}});
        event("Close order", {{"Orders", O}});
    }
    log.canonicalize();
    return log;
}

/// A condition of a ground-truth rule row: attribute op value, op one of
/// "=", ">=", "<".
struct RuleCondition {
    std::string attribute;
    std::string op;
    AttributeValue value;
};

struct TruthRule {
    std::vector<RuleCondition> conditions; ///< all must hold; empty: otherwise
    AttributeValue outcome;
};

/// First-hit decision table.
struct TruthTable {
    std::string output;
    std::vector<std::string> inputs;
    std::vector<TruthRule> rules;

    std::optional<AttributeValue> evaluate(const std::map<std::string, AttributeValue>& values) const
    {
        for (const auto& r : rules) {
            bool hit = true;
            for (const auto& c : r.conditions) {
                auto it = values.find(c.attribute);
                if (it == values.end()) {
                    hit = false;
                    break;
                }
                const auto& v = it->second;
                if (c.op == "=")
                    hit = v == c.value;
                else if (c.op == ">=")
                    hit = v.as_number() >= c.value.as_number();
                else if (c.op == "<")
                    hit = v.as_number() < c.value.as_number();
                else
                    throw Error(ErrorCode::InvalidValue, "unknown operator " + c.op);
                if (!hit) break;
            }
            if (hit) return r.outcome;
        }
        return std::nullopt;
    }
};

struct TruthEdge {
    std::string input;
    std::string input_type;
    std::string output;
    std::string output_type;

    friend auto operator<=>(const TruthEdge&, const TruthEdge&) = default;
};

struct GroundTruthSpec {
    std::vector<TruthEdge> drd_edges;
    std::vector<TruthTable> rules;

    const TruthTable* table(std::string_view output) const
    {
        for (const auto& t : rules)
            if (t.output == output) return &t;
        return nullptr;
    }
};

enum class Process { Publication, Shipping };

inline GroundTruthSpec ground_truth_publication(const PublicationParams& p = {})
{
    using V = AttributeValue;
    const auto th = V::numeric(double(p.publication_threshold));
    GroundTruthSpec g;
    g.drd_edges = {{"Review Score", "Books", "Quality", "Books"},
                   {"Number of published books", "Authors", "Quality", "Books"},
                   {"Quality", "Books", "Publication Status", "Books"},
                   {"Compliance", "Books", "Publication Status", "Books"}};
    g.rules.push_back({"Quality",
                       {"Number of published books", "Review Score"},
                       {{{{"Number of published books", ">=", th}, {"Review Score", ">=", V::numeric(6)}}, V::categorical("Excellent")},
                        {{{"Number of published books", ">=", th}}, V::categorical("Average")},
                        {{{"Review Score", ">=", V::numeric(7)}}, V::categorical("Excellent")},
                        {{}, V::categorical("Bad")}}});
    g.rules.push_back({"Publication Status",
                       {"Quality", "Compliance"},
                       {{{{"Quality", "=", V::categorical("Excellent")}, {"Compliance", "=", V::boolean(true)}}, V::categorical("Yes")},
                        {{{"Quality", "=", V::categorical("Average")}, {"Compliance", "=", V::boolean(true)}}, V::categorical("Revise")},
                        {{}, V::categorical("No")}}});
    return g;
}

inline GroundTruthSpec ground_truth_shipping(const ShippingParams& p = {})
{
    using V = AttributeValue;
    GroundTruthSpec g;
    g.drd_edges = {{"Quantity", "Orders", "Order Value", "Orders"},
                   {"Order Value", "Orders", "Shipping Method", "Orders"},
                   {"Importance", "Customers", "Shipping Method", "Orders"},
                   {"Refund", "Orders", "Shipping Method", "Orders"}};
    g.rules.push_back({"Shipping Method",
                       {"Refund", "Importance", "Order Value"},
                       {{{{"Refund", "=", V::boolean(true)}}, V::categorical("Express Courier")},
                        {{{"Importance", "=", V::categorical("High")}}, V::categorical("Courier")},
                        {{{"Order Value", ">=", V::numeric(p.order_value_threshold)}}, V::categorical("Courier")},
                        {{}, V::categorical("Mail")}}});
    return g;
}

} // namespace iodda
