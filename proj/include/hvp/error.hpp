#pragma once

#include <stdexcept>
#include <string>

namespace hvp {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative or quadrature procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Data that parses but violates a structural invariant.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lookup of a key absent from an embedded table.
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace hvp
