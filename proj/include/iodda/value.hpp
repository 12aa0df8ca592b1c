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

#include <charconv>
#include <cmath>
#include <compare>
#include <string>
#include <string_view>
#include <variant>

#include "iodda/error.hpp"

namespace iodda {

enum class ValueKind { Numeric, Categorical, Boolean, Text };

inline std::string_view kind_name(ValueKind kind)
{
    switch (kind) {
    case ValueKind::Numeric: return "numeric";
    case ValueKind::Categorical: return "categorical";
    case ValueKind::Boolean: return "boolean";
    case ValueKind::Text: return "text";
    }
    return "unknown";
}

inline ValueKind parse_kind(std::string_view name)
{
    if (name == "numeric") return ValueKind::Numeric;
    if (name == "categorical") return ValueKind::Categorical;
    if (name == "boolean") return ValueKind::Boolean;
    if (name == "text") return ValueKind::Text;
    throw Error(ErrorCode::SchemaMismatch, "unknown value kind '" + std::string(name) + "'");
}

inline std::string format_number(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

/// Tagged scalar attribute value. Numeric values are always finite and
/// categorical labels are never empty; the factories enforce both.
class AttributeValue {
public:
    AttributeValue() = default;

    static AttributeValue numeric(double v)
    {
        if (!std::isfinite(v))
            throw Error(ErrorCode::InvalidValue, "numeric attribute values must be finite");
        AttributeValue out;
        out.kind_ = ValueKind::Numeric;
        out.data_ = v;
        return out;
    }
    static AttributeValue categorical(std::string label)
    {
        if (label.empty())
            throw Error(ErrorCode::InvalidValue, "categorical labels must be non-empty");
        AttributeValue out;
        out.kind_ = ValueKind::Categorical;
        out.data_ = std::move(label);
        return out;
    }
    static AttributeValue boolean(bool b)
    {
        AttributeValue out;
        out.kind_ = ValueKind::Boolean;
        out.data_ = b;
        return out;
    }
    static AttributeValue text(std::string s)
    {
        AttributeValue out;
        out.kind_ = ValueKind::Text;
        out.data_ = std::move(s);
        return out;
    }

    /// Parses a CSV cell according to the declared kind.
    static AttributeValue parse(std::string_view cell, ValueKind kind)
    {
        switch (kind) {
        case ValueKind::Numeric: {
            double v = 0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw Error(ErrorCode::InvalidValue, "not a number: '" + std::string(cell) + "'");
            return numeric(v);
        }
        case ValueKind::Boolean:
            if (cell == "True" || cell == "true" || cell == "1") return boolean(true);
            if (cell == "False" || cell == "false" || cell == "0") return boolean(false);
            throw Error(ErrorCode::InvalidValue, "not a boolean: '" + std::string(cell) + "'");
        case ValueKind::Categorical: return categorical(std::string(cell));
        case ValueKind::Text: return text(std::string(cell));
        }
        throw Error(ErrorCode::InvalidValue, "unknown kind");
    }

    ValueKind kind() const noexcept { return kind_; }
    bool is_numeric() const noexcept { return kind_ == ValueKind::Numeric; }

    double as_number() const { return std::get<double>(data_); }
    bool as_bool() const { return std::get<bool>(data_); }
    const std::string& as_string() const { return std::get<std::string>(data_); }

    /// Canonical textual form, also used for CSV cells.
    std::string to_string() const
    {
        switch (kind_) {
        case ValueKind::Numeric: return format_number(as_number());
        case ValueKind::Boolean: return as_bool() ? "True" : "False";
        default: return as_string();
        }
    }

    friend bool operator==(const AttributeValue& a, const AttributeValue& b) = default;
    friend std::strong_ordering operator<=>(const AttributeValue& a, const AttributeValue& b)
    {
        if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
        switch (a.kind_) {
        case ValueKind::Numeric: {
            double x = a.as_number(), y = b.as_number();
            return x < y ? std::strong_ordering::less
                         : (y < x ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        case ValueKind::Boolean: return a.as_bool() <=> b.as_bool();
        default: return a.as_string().compare(b.as_string()) <=> 0;
        }
    }

private:
    ValueKind kind_ = ValueKind::Text;
    std::variant<double, bool, std::string> data_ = std::string{};
};

} // namespace iodda
