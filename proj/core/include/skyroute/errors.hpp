#ifndef SKYROUTE_ERRORS_HPP
#define SKYROUTE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skyroute {

/// Base class for all skyroute errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- input/data problems (CLI exit code 3) ---

/// Malformed file content (names file and line where possible).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A structural invariant of the data does not hold (dangling endpoint,
/// duplicate id, non-positive length, ...).
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// Invalid quality-direction or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Reference to an entity that does not exist (unknown node id).
class LookupError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (unreadable input, unwritable output).
class IoError : public Error {
public:
    using Error::Error;
};

// --- infeasible-query problems (CLI exit code 2) ---

/// No drone in the fleet can lift the requested payload.
class NoCapableDroneError : public Error {
public:
    using Error::Error;
};

/// No feasible path connects source and destination.
class UnreachableError : public Error {
public:
    using Error::Error;
};

/// A segment or plan cannot be flown under the energy model.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// No connected component large enough for the requested extraction.
class ExtractionError : public Error {
public:
    using Error::Error;
};

} // namespace skyroute

#endif
