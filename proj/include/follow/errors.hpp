#ifndef FOLLOW_ERRORS_HPP
#define FOLLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace follow {

/// Caller handed us something malformed (dimension mismatch, bad coupling, ...).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A structure could not be built (e.g. no IK at a reference endpoint).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation was invoked in a state that does not support it.
struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Scenario / result file problems, with a field path when known.
struct ParseError : std::runtime_error {
    std::string field;
    ParseError(const std::string& msg, std::string field_path = "")
        : std::runtime_error(field_path.empty() ? msg : field_path + ": " + msg),
          field(std::move(field_path)) {}
};

}  // namespace follow

#endif
