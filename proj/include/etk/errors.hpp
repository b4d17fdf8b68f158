#ifndef ETK_ERRORS_HPP
#define ETK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace etk {

// Base class for every error the engine throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid physical parameter; names the offending field.
class ParameterError : public Error {
 public:
  ParameterError(const std::string& field, const std::string& msg)
      : Error(field + ": " + msg), field(field) {}
  std::string field;
};

// Invalid operation argument (e.g. evaluation at s = 0 where a closed form
// requires s != 0).
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

// Vanishing denominator while forming a level Green function.
class SingularGreenError : public Error {
 public:
  SingularGreenError(int level, const std::string& msg)
      : Error(msg), level(level) {}
  int level;
};

// Hierarchy-level bookkeeping mismatch between producer and consumer.
class LevelMismatchError : public Error {
 public:
  explicit LevelMismatchError(const std::string& msg) : Error(msg) {}
};

// Vanishing denominator in a rate resolution.
class SingularDenominatorError : public Error {
 public:
  explicit SingularDenominatorError(const std::string& msg) : Error(msg) {}
};

// A rate constant came out <= 0, so its logarithm is undefined.
class NonpositiveRateError : public Error {
 public:
  NonpositiveRateError(double forward, double backward, const std::string& msg)
      : Error(msg), forward(forward), backward(backward) {}
  double forward;
  double backward;
};

// Population trace has not settled; the tail is unusable for fitting.
class NotEquilibratedError : public Error {
 public:
  explicit NotEquilibratedError(const std::string& msg) : Error(msg) {}
};

// Exponential fit rejected (low R^2 or degenerate window).
class PoorFitError : public Error {
 public:
  PoorFitError(double r_squared, const std::string& msg)
      : Error(msg), r_squared(r_squared) {}
  double r_squared;
};

// Integrator blow-up detected via trace drift.
class StabilityError : public Error {
 public:
  StabilityError(double trace_error, double time, const std::string& msg)
      : Error(msg), trace_error(trace_error), time(time) {}
  double trace_error;
  double time;
};

// Requested propagation exceeds the hard step budget.
class StepLimitError : public Error {
 public:
  StepLimitError(long long requested, long long limit, const std::string& msg)
      : Error(msg), requested(requested), limit(limit) {}
  long long requested;
  long long limit;
};

}  // namespace etk

#endif
