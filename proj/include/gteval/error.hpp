#ifndef GTEVAL_ERROR_HPP
#define GTEVAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gteval {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Grids of co-resident inputs do not match.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A parameter is outside its documented domain.
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

/// Input data violates a structural requirement (empty annotation set,
/// non-finite response values, malformed file, ...).
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

/// A correlation was requested on a sample where it is undefined
/// (constant input on either side).
class UndefinedCorrelationError : public Error {
public:
    explicit UndefinedCorrelationError(const std::string& what) : Error(what) {}
};

}  // namespace gteval

#endif
