/*
 * Copyright 2026 The decdirac Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace decdirac {

enum class ErrorCode {
    NonManifold,
    InvertedTriangle,
    DuplicateVertex,
    IndexOutOfRange,
    PerturbationBreaksWellCenteredness,
    ParseError,
    NotWellCentered,
    DimensionMismatch,
    MissingDerivatives,
    UnknownCase,
    TopologyError,
    SolverFailure,
    SingularSystem,
    InvalidArgument,
    IoError,
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::InvertedTriangle: return "InvertedTriangle";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PerturbationBreaksWellCenteredness: return "PerturbationBreaksWellCenteredness";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotWellCentered: return "NotWellCentered";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingDerivatives: return "MissingDerivatives";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::TopologyError: return "TopologyError";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Library exception; `code()` identifies the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , m_code(code)
        , m_message(what)
    {}

    ErrorCode code() const noexcept { return m_code; }
    /// The message without the code prefix.
    const std::string& message() const noexcept { return m_message; }

private:
    ErrorCode m_code;
    std::string m_message;
};

/// Mesh file syntax or content error, carrying the 1-based line number (0 if unknown).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what)
        , m_line(line)
    {}

    std::size_t line() const noexcept { return m_line; }

private:
    std::size_t m_line;
};

} // namespace decdirac
