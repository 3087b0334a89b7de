// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#pragma once

#include <stdexcept>
#include <string>

namespace ybe {

// Error categories shared by the C++ core and the C API. The numeric values
// are part of the C ABI (see ybe.h) and must not be renumbered.
enum class ErrorCode : int {
    ok = 0,
    invalid_argument = 1,
    pole_proximity = 2,
    domain = 3,
    size_mismatch = 4,
    not_convergent = 5,
    singular = 6,
    parse = 7,
    internal = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& w) : Error(ErrorCode::invalid_argument, w) {}
};
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error(ErrorCode::pole_proximity, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};
struct SizeMismatch : Error {
    explicit SizeMismatch(const std::string& w) : Error(ErrorCode::size_mismatch, w) {}
};
struct NotConvergent : Error {
    explicit NotConvergent(const std::string& w) : Error(ErrorCode::not_convergent, w) {}
};
struct SingularError : Error {
    explicit SingularError(const std::string& w) : Error(ErrorCode::singular, w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorCode::parse, w) {}
};

}  // namespace ybe
