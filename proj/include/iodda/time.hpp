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
#include <cstdio>
#include <string>
#include <string_view>

#include "iodda/error.hpp"

namespace iodda {

using Timestamp = std::chrono::sys_seconds;

/// Accepts `YYYY-MM-DD HH:MM:SS` and the ISO-8601 `T` separator variant.
/// A trailing `Z` is tolerated; other offsets are rejected.
inline Timestamp parse_timestamp(std::string_view text)
{
    std::string s(text);
    if (!s.empty() && s.back() == 'Z') s.pop_back();
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
    char sep = 0;
    int consumed = 0;
    int n = std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%n", &y, &mo, &d, &sep, &h, &mi, &se, &consumed);
    if (n != 7 || (sep != ' ' && sep != 'T') || consumed != static_cast<int>(s.size()))
        throw Error(ErrorCode::InvalidValue, "bad timestamp '" + std::string(text) + "'");
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || se > 60)
        throw Error(ErrorCode::InvalidValue, "bad timestamp '" + std::string(text) + "'");
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{se};
}

inline std::string format_timestamp(Timestamp t, char separator = ' ')
{
    using namespace std::chrono;
    auto day_point = floor<days>(t);
    year_month_day ymd{day_point};
    hh_mm_ss hms{t - day_point};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u%c%02d:%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), separator,
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

inline std::string format_iso8601(Timestamp t) { return format_timestamp(t, 'T'); }

} // namespace iodda
