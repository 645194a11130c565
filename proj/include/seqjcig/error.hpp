#pragma once

#include <stdexcept>
#include <string>

namespace seqjcig {

/// Input violates a documented precondition (bad config, malformed record,
/// duplicate id, ...). The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// File system or stream failure. The CLI maps this to exit code 1.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace seqjcig
