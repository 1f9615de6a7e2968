#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: bad geometry, bad sizes, malformed input data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the region where an operation is defined
/// (positions outside the box, energies outside the sub-barrier window).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input that violates an operation's precondition, e.g. an energy that is
/// not a root of the quantization condition or an unnormalized state.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of its iteration budget.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::size_t iterations)
      : Error(what), iterations_(iterations) {}

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// Fewer roots exist than were requested; carries the ones that were found.
class PartialResultError : public Error {
 public:
  PartialResultError(const std::string& what, std::vector<double> found)
      : Error(what), found_(std::move(found)) {}

  const std::vector<double>& found() const noexcept { return found_; }

 private:
  std::vector<double> found_;
};

/// Measured data that the two-state model cannot represent.
class InconsistentDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace dwell
