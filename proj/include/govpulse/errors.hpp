#pragma once

#include <stdexcept>
#include <string>

namespace govpulse {

/// Input file missing or unreadable.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file present but its header does not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation was asked for on inputs outside its domain
/// (empty ballots, degenerate regressor, constant instrument, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace govpulse
