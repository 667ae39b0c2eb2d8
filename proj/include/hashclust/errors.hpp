// Error types shared across the library. The CLI maps these to exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace hashclust {

// Bad configuration supplied by the caller (invalid k, bad window size, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable or structurally broken input files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A library-internal invariant failed; indicates a bug, not bad input.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace hashclust
