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

#include <stdexcept>
#include <string>
#include <string_view>

namespace iodda {

enum class ErrorCode {
    MissingFile,
    SchemaMismatch,
    DanglingForeignKey,
    DuplicateId,
    UnknownObject,
    IoFailure,
    InvalidValue,
    InvalidConfig,
    InvalidParams,
    LengthMismatch,
    TooFewSamples,
    MixedKinds,
    EmptyDataset,
    RecursionDepthExceeded,
    InvalidDocument,
};

inline std::string_view code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::DanglingForeignKey: return "DanglingForeignKey";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::MixedKinds: return "MixedKinds";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::RecursionDepthExceeded: return "RecursionDepthExceeded";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    }
    return "Unknown";
}

/// Every recoverable failure in the library is reported with one of these.
/// `location` names the file/row/object the failure refers to, when known.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string location = {})
        : std::runtime_error(format(code, message, location)), code_(code),
          message_(std::move(message)), location_(std::move(location))
    {
    }

    ErrorCode code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& location() const noexcept { return location_; }

private:
    static std::string format(ErrorCode code, const std::string& message, const std::string& location)
    {
        std::string out(code_name(code));
        out += ": ";
        out += message;
        if (!location.empty()) {
            out += " (at ";
            out += location;
            out += ")";
        }
        return out;
    }

    ErrorCode code_;
    std::string message_;
    std::string location_;
};

} // namespace iodda
