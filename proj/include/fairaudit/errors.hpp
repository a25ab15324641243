#pragma once

#include <stdexcept>
#include <string>

namespace fairaudit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user configuration: unknown column, unknown reference level, bad flag.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input data that fails validation (out-of-range prediction, bad number).
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::size_t row)
        : Error(what + " (row " + std::to_string(row) + ")"), row_(row) {}
    explicit ValidationError(const std::string& what) : Error(what) {}

    /// 1-based data row, or 0 when not tied to a row.
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_ = 0;
};

class EmptyInputError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Labels contain a single class where both are required.
class DegenerateLabelsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyGroupError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Weighted normal equations are singular.
class RankDeficiencyError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

} // namespace fairaudit
