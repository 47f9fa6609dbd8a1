#pragma once

#include <stdexcept>
#include <string>

namespace liesys {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class UnknownKey : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// The Wei-Norman matrix became (numerically) singular; the chosen
/// second-kind coordinates do not cover the group curve past `t`.
class FactorizationBreakdown : public Error {
 public:
  FactorizationBreakdown(double t, double condition)
      : Error("Wei-Norman factorization breakdown at t=" + std::to_string(t) +
              " (condition estimate " + std::to_string(condition) +
              "); try a different factorization order"),
        t_(t),
        condition_(condition) {}
  double t() const { return t_; }
  double condition() const { return condition_; }

 private:
  double t_;
  double condition_;
};

class StepUnderflow : public Error {
 public:
  explicit StepUnderflow(double t)
      : Error("step size underflow at t=" + std::to_string(t)), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// A homogeneous-space chart left its domain (denominator vanished).
class ChartBreakdown : public Error {
 public:
  using Error::Error;
};

class NotALieSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace liesys
