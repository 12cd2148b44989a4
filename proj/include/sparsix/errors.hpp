#pragma once

#include <stdexcept>
#include <string>

namespace sparsix {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Input data violates a precondition (non-finite entries, zero matrix where
/// a nonzero one is required, ...).
class invalid_input_error : public error {
 public:
  using error::error;
};

/// A parameter is out of its documented range.
class invalid_parameter_error : public error {
 public:
  using error::error;
};

/// Dimension mismatch between operands.
class shape_error : public error {
 public:
  using error::error;
};

/// A numerical kernel failed (factorization breakdown, non-finite result).
/// Reaching this for a valid input is a bug, not a user error.
class numeric_error : public error {
 public:
  using error::error;
};

/// File I/O or parse failure; the message carries "path:line:" context.
class io_error : public error {
 public:
  using error::error;
};

}  // namespace sparsix
