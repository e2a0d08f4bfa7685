#pragma once

#include <stdexcept>
#include <string>

namespace metric_forge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that is structurally unusable: non-square, NaN, negative, duplicate
/// labels, unparsable CSV. Distinct from an axiom failure.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its documented domain (S <= 0, p > 1, eps <= 0, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A B-action failed to produce a finite nonnegative value, was queried
/// outside its declared range, or ran out of evaluation budget.
class EvaluationError : public Error {
 public:
  EvaluationError(std::string context, const std::string& what)
      : Error(context.empty() ? what : context + ": " + what),
        context_(std::move(context)) {}

  const std::string& context() const noexcept { return context_; }

 private:
  std::string context_;
};

/// No s in [0, m] solves theta(s, t) = m.
class AxiomIiiViolation : public Error {
 public:
  AxiomIiiViolation(double m, double t, const std::string& what)
      : Error(what), m_(m), t_(t) {}

  double m() const noexcept { return m_; }
  double t() const noexcept { return t_; }

 private:
  double m_;
  double t_;
};

/// No radius above the floor keeps theta below eps on the quarter-disk.
class ContinuityFailure : public Error {
 public:
  ContinuityFailure(double epsilon, double smallest_delta, double sup_observed,
                    const std::string& what)
      : Error(what),
        epsilon_(epsilon),
        smallest_delta_(smallest_delta),
        sup_observed_(sup_observed) {}

  double epsilon() const noexcept { return epsilon_; }
  double smallest_delta() const noexcept { return smallest_delta_; }
  double sup_observed() const noexcept { return sup_observed_; }

 private:
  double epsilon_;
  double smallest_delta_;
  double sup_observed_;
};

}  // namespace metric_forge
