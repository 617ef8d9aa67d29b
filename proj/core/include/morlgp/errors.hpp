#ifndef MORLGP_ERRORS_HPP
#define MORLGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace morlgp {

/// Malformed input: bad dimensions, unknown slots/values, schema violations.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Calls that violate a usage contract (empty legal set, non-terminal episode end, ...).
class ProtocolError : public std::runtime_error {
public:
    explicit ProtocolError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Corrupt or truncated model snapshots and result files.
class SerializationError : public std::runtime_error {
public:
    explicit SerializationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace morlgp

#endif
