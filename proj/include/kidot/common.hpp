#pragma once

#include <stdexcept>
#include <string>

namespace kidot {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad arguments, shape mismatches, malformed files. CLI exit code 1.
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Non-finite values, divergence, failed numeric contracts. CLI exit code 2.
struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

}  // namespace kidot
