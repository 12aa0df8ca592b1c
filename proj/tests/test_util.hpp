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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "iodda.hpp"

namespace testutil {

namespace fs = std::filesystem;

inline fs::path fixture(const std::string& name) { return fs::path(IODDA_FIXTURES) / name; }

/// Fresh, empty directory under the system temp dir.
inline fs::path scratch_dir(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("iodda_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

inline fs::path copy_fixture(const std::string& name, const std::string& as)
{
    auto dir = scratch_dir(as);
    fs::copy(fixture(name), dir, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
    return dir;
}

inline std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

inline void replace_in_file(const fs::path& p, const std::string& from, const std::string& to)
{
    auto text = slurp(p);
    auto pos = text.find(from);
    if (pos == std::string::npos) throw std::runtime_error("pattern not found in " + p.string());
    text.replace(pos, from.size(), to);
    spit(p, text);
}

template <class F>
iodda::ErrorCode error_code_of(F&& f)
{
    try {
        f();
    } catch (const iodda::Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected an iodda::Error");
}

inline std::vector<std::string> event_ids(const std::vector<const iodda::Event*>& events)
{
    std::vector<std::string> out;
    for (const auto* e : events) out.push_back(e->id);
    return out;
}

/// Small hand-built logs: declare types, append events in time order, then
/// finish() canonicalizes and checks the result.
class ToyLog {
public:
    ToyLog& type(const std::string& name, std::vector<iodda::AttributeSpec> attributes = {})
    {
        log_.schema.object_types.push_back({name, std::move(attributes)});
        return *this;
    }
    ToyLog& object(const std::string& id, const std::string& type,
                   std::map<std::string, iodda::AttributeValue> statics = {})
    {
        log_.objects.push_back({id, type, std::move(statics)});
        return *this;
    }
    std::string event(const std::string& activity, std::map<std::string, std::vector<iodda::ObjectId>> objects)
    {
        iodda::Event e;
        e.id = "e" + std::to_string(log_.events.size() + 1);
        e.activity = activity;
        e.timestamp = iodda::parse_timestamp("2022-01-01 00:00:00") + std::chrono::minutes(log_.events.size());
        e.objects = std::move(objects);
        log_.events.push_back(e);
        return e.id;
    }
    ToyLog& record(const std::string& attribute, iodda::AttributeValue value, const std::string& event,
                   const iodda::ObjectId& object)
    {
        log_.dynamic_records.push_back(
            {"r" + std::to_string(log_.dynamic_records.size() + 1), attribute, std::move(value), event, object});
        return *this;
    }
    iodda::DocelLog finish()
    {
        log_.canonicalize();
        auto report = iodda::validate_log(log_);
        if (!report.ok()) throw std::runtime_error("toy log invalid: " + report.errors.front().message);
        return std::move(log_);
    }

private:
    iodda::DocelLog log_;
};

inline iodda::AttributeValue cat(const std::string& s) { return iodda::AttributeValue::categorical(s); }
inline iodda::AttributeValue num(double v) { return iodda::AttributeValue::numeric(v); }

/// Random log over two object types (at most 10 objects) with dynamic and
/// static attributes, for property tests.
inline iodda::DocelLog random_log(std::uint64_t seed)
{
    using iodda::AttributeSpec;
    using iodda::ValueKind;
    std::mt19937_64 gen(seed);
    auto below = [&](std::size_t n) { return static_cast<std::size_t>(gen() % n); };
    ToyLog t;
    t.type("A", {AttributeSpec{"X", ValueKind::Categorical, true}, AttributeSpec{"Y", ValueKind::Numeric, true}});
    t.type("B", {AttributeSpec{"S", ValueKind::Categorical, false}, AttributeSpec{"Z", ValueKind::Numeric, true}});
    const std::size_t na = 3 + below(4), nb = 2 + below(3);
    for (std::size_t i = 0; i < na; ++i) t.object("a" + std::to_string(i), "A");
    for (std::size_t i = 0; i < nb; ++i) t.object("b" + std::to_string(i), "B", {{"S", cat(below(2) ? "u" : "v")}});
    const std::size_t events = 10 + below(40);
    for (std::size_t i = 0; i < events; ++i) {
        std::string a = "a" + std::to_string(below(na));
        std::map<std::string, std::vector<iodda::ObjectId>> objs{{"A", {a}}};
        std::vector<iodda::ObjectId> bs;
        if (below(2)) bs.push_back("b" + std::to_string(below(nb)));
        if (!bs.empty()) objs["B"] = bs;
        auto e = t.event("act" + std::to_string(below(4)), objs);
        if (below(3) == 0) t.record("X", cat(std::string(1, static_cast<char>('p' + below(3)))), e, a);
        if (below(4) == 0) t.record("Y", num(static_cast<double>(below(5))), e, a);
        if (!bs.empty() && below(3) == 0) t.record("Z", num(static_cast<double>(below(3))), e, bs[0]);
    }
    return t.finish();
}

} // namespace testutil
