#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent or invalid dimensions (image stacks, rasters, tables).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Empty input where at least one element is required.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

/// Malformed file content. Carries the byte offset at which parsing failed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Coordinate outside the grid.
class CoordinateError : public Error {
public:
    using Error::Error;
};

/// A parameter violates its documented range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A value requested outside the domain of a function (e.g. a non-response moment).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Synthetic network generation failed.
class GenerationError : public Error {
public:
    using Error::Error;
};

/// File system failure (missing file, unwritable directory).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace adm
