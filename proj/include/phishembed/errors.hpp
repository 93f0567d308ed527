#pragma once

#include <stdexcept>
#include <string>

namespace phishembed {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is structurally malformed (bad URL, missing field shape).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Caller-supplied configuration cannot be satisfied.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A numerical routine could not deliver the requested result.
class NumericError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Corpus/model file does not follow its schema. Carries the 1-based line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace phishembed
