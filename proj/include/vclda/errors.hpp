#pragma once

#include <stdexcept>
#include <string>

namespace vclda {

// Incompatible or invalid dimensions (basis too small, feature count
// mismatch between model and data, malformed grids).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Gram matrix, design system or covariance matrix is numerically
// singular (condition estimate beyond ~1e12).
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The plug-in scale factor of the unequal-prior rule has a non-positive
// denominator; the fitted direction is unusable for that rule.
class DegenerateScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The fitted direction is (numerically) zero where a nonzero direction
// is required, e.g. when evaluating a conditional risk ratio.
class ZeroDirectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No grid candidate satisfies the per-fold sample requirements.
class InfeasibleGridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message names the offending row/column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vclda
