#pragma once

#include <stdexcept>
#include <string>

namespace wattagent {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad values or broken invariants in inputs (negative factor, empty corpus, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error("validation error: " + msg) {}
};

// Broken configuration: malformed config documents, unresolved model
// references, unreadable tokenizer assets.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error("configuration error: " + msg) {}
};

// Filesystem-level failures: missing or unreadable files.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("I/O error: " + msg) {}
};

// Key not found in a table; the message lists what is available.
class LookupError : public Error {
public:
    explicit LookupError(const std::string& msg) : Error("lookup error: " + msg) {}
};

// A report was requested over model profiles with no provenance recorded.
// Reports must be able to say where every number came from.
class TransparencyError : public Error {
public:
    explicit TransparencyError(const std::string& msg) : Error("transparency error: " + msg) {}
};

} // namespace wattagent
