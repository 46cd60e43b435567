#ifndef CAVS_ERRORS_HPP
#define CAVS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cavs {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments, violated preconditions, inconsistent inputs.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// A configured computation bound was exceeded (path cap, pool bound, class cap).
class LimitError : public Error {
public:
    explicit LimitError(const std::string& what) : Error(what) {}
};

// Malformed input text (network files, CSV). Carries a 1-based line number
// when one is known; line == 0 means "no position available".
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class EnumerationLimitError : public LimitError {
public:
    explicit EnumerationLimitError(const std::string& what) : LimitError(what) {}
};

class PoolLimitError : public LimitError {
public:
    explicit PoolLimitError(const std::string& what) : LimitError(what) {}
};

class ClassCapError : public LimitError {
public:
    explicit ClassCapError(const std::string& what) : LimitError(what) {}
};

class UnestimableInterventionError : public ValidationError {
public:
    explicit UnestimableInterventionError(const std::string& what) : ValidationError(what) {}
};

class OrientationInconsistencyError : public ValidationError {
public:
    explicit OrientationInconsistencyError(const std::string& what) : ValidationError(what) {}
};

class AmenabilityError : public ValidationError {
public:
    explicit AmenabilityError(const std::string& what) : ValidationError(what) {}
};

}  // namespace cavs

#endif
