#pragma once

#include <stdexcept>
#include <string>

namespace qstab {

/// Raised when operands of exact-field arithmetic live in different fields
/// (e.g. residues with distinct moduli).
struct field_mismatch : std::invalid_argument {
    explicit field_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an exhaustive enumeration would exceed the configured budget.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on malformed input files or schema violations; carries a field path.
struct schema_error : std::runtime_error {
    explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qstab
