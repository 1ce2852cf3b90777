#pragma once

#include <stdexcept>
#include <string>

namespace dpnls {

/// Invalid or non-finite user input (bad parameter, malformed grid).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Request outside the domain where a branch or state exists.
class OutOfRangeError : public std::domain_error {
 public:
  explicit OutOfRangeError(const std::string& msg) : std::domain_error(msg) {}
};

/// A bracketed root finder could not locate a sign change.
class BracketError : public std::runtime_error {
 public:
  explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Asymmetric-branch frequency derivatives degenerate at the branch point.
class SingularAtBifurcation : public std::runtime_error {
 public:
  explicit SingularAtBifurcation(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two objects that must share a grid do not.
class GridMismatchError : public std::runtime_error {
 public:
  explicit GridMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An iterative numerical routine exhausted its budget.
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dpnls
