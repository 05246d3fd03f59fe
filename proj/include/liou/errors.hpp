#pragma once

#include <stdexcept>
#include <string>

namespace liou {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter is outside the operation's domain (h > X, negative u, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A range request cannot be honored (overflow, segment cap, desk-scale guard).
class RangeError : public Error {
public:
    using Error::Error;
};

// Query into a range that was never materialized.
class CoverageError : public Error {
public:
    using Error::Error;
};

// Inconsistent or incomplete run configuration (e.g. random policy, no seed).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure; subclasses distinguish what went wrong on read.
class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public IoError {
public:
    using IoError::IoError;
};

class CrcError : public IoError {
public:
    using IoError::IoError;
};

class TruncationError : public IoError {
public:
    using IoError::IoError;
};

}  // namespace liou
