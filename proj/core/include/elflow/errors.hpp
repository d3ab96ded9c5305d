#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elflow {

/// A pivot fell below tolerance and no fallback could recover.
class SingularMatrixError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration gave up; carries the last sup-norm residual.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double last_residual, int iterations)
      : std::runtime_error(what), last_residual_(last_residual), iterations_(iterations) {}

  [[nodiscard]] double last_residual() const noexcept { return last_residual_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }

private:
  double last_residual_;
  int iterations_;
};

/// Failure inside a time step; `step()` is the level m being computed.
class StepError : public std::runtime_error {
public:
  StepError(std::size_t step, const std::string& cause)
      : std::runtime_error("step " + std::to_string(step) + ": " + cause), step_(step) {}

  [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

}  // namespace elflow
