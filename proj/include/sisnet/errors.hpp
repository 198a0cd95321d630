#ifndef SISNET_ERRORS_HPP
#define SISNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sisnet {

/// Malformed input text (edge lists, config files).
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Infeasible or out-of-range parameters for a generator or operation.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Operands of incompatible dimensions.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition on the operands was violated (e.g. symmetric-only routine).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Iterative method failed to converge; carries its last estimate.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string &what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

private:
  double last_estimate_;
};

/// Enumeration would exceed its product-count or wall-clock budget.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace sisnet

#endif // SISNET_ERRORS_HPP
