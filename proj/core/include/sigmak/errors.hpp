#pragma once

#include <stdexcept>

namespace sigmak {

/// Argument outside the domain of an operation (bad k, bad order, bad radius...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The geometry is valid but the requested computation does not support it.
class UnsupportedGeometry : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneracyError : public NumericError {
 public:
  using NumericError::NumericError;
};

class NoSolutionError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A computed spectrum left the admissible cone.
class AdmissibilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IllConditionedFit : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace sigmak
