#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace stablecurv {

namespace detail {
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}
}  // namespace detail

/// Base class for numerical failures (as opposed to bad arguments, which
/// raise std::invalid_argument / std::domain_error).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  NotPositiveDefinite(std::size_t pivot_index, double pivot_value)
      : NumericalError("matrix is not positive definite: pivot " +
                       std::to_string(pivot_index) + " = " +
                       detail::sci(pivot_value)),
        pivot_index_(pivot_index),
        pivot_value_(pivot_value) {}

  std::size_t pivot_index() const noexcept { return pivot_index_; }
  double pivot_value() const noexcept { return pivot_value_; }

 private:
  std::size_t pivot_index_;
  double pivot_value_;
};

class ConvergenceFailure : public NumericalError {
 public:
  explicit ConvergenceFailure(std::size_t iterations)
      : NumericalError("eigensolver did not converge after " +
                       std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

class DegeneratePencil : public NumericalError {
 public:
  DegeneratePencil()
      : NumericalError("pencil has no retained direction after deflation") {}
};

class InsufficientData : public NumericalError {
 public:
  InsufficientData(std::size_t usable, std::size_t required)
      : NumericalError("insufficient data for fit: " + std::to_string(usable) +
                       " usable points, " + std::to_string(required) +
                       " required"),
        usable_(usable) {}

  std::size_t usable() const noexcept { return usable_; }

 private:
  std::size_t usable_;
};

class OptimizationStall : public NumericalError {
 public:
  OptimizationStall(double best, double worst)
      : NumericalError("optimizer restarts disagree: best " +
                       detail::sci(best) + ", worst " +
                       detail::sci(worst)),
        spread_(worst - best) {}

  double spread() const noexcept { return spread_; }

 private:
  double spread_;
};

}  // namespace stablecurv
