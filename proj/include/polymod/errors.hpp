#pragma once

#include <stdexcept>
#include <string>

namespace polymod {

// Bad input: malformed subsets, points on a wall where off-wall is required,
// vectors outside the cone, chamber mismatches.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A parameter outside its legal open interval (e.g. epsilon_J).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Iterative solver gave up; carries the last residual it reached.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Fewer than three distinct directions: no point of M_{0,n} to report.
class NoModuliError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A degenerating family never produced a usable bubble limit.
class NoLimitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Stable-polygon tree that is not laminar / not a tree.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace polymod
