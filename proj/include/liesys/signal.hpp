#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "liesys/linalg.hpp"

namespace liesys {

/// One scalar control channel t -> b(t).
class Signal {
 public:
  enum class Kind { Constant, Sine, Cosine, Polynomial, Sampled, Custom };

  /// Zero signal.
  Signal();

  static Signal constant(double value);
  /// offset + amplitude * sin(omega t + phase)
  static Signal sine(double amplitude, double omega, double phase = 0.0, double offset = 0.0);
  /// offset + amplitude * cos(omega t + phase)
  static Signal cosine(double amplitude, double omega, double phase = 0.0, double offset = 0.0);
  /// offset + slope * t
  static Signal ramp(double offset, double slope);
  /// sum_k coeffs[k] t^k
  static Signal polynomial(std::vector<double> coeffs);
  /// Clamped cubic spline through (t_i, y_i); end slopes from one-sided
  /// second-order differences. Requires at least two strictly increasing knots.
  static Signal sampled(std::vector<double> t, std::vector<double> y);
  static Signal custom(std::function<double(double)> f, std::string label = "custom");

  /// Parses the textual form used in scenario files:
  ///   const 1.5
  ///   sin amp=1 omega=2.5 [phase=0] [offset=0]
  ///   cos amp=1 omega=1 [phase=0] [offset=0]
  ///   ramp [offset=0] slope=0.2
  ///   poly c0 c1 c2 ...
  ///   samples t0:y0 t1:y1 ...
  static Signal parse(const std::string& text);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  /// Round-trippable text in the `parse` syntax (custom signals print their label).
  std::string describe() const;

 private:
  struct Spline;

  Kind kind_ = Kind::Constant;
  std::vector<double> params_;
  std::shared_ptr<const Spline> spline_;
  std::function<double(double)> custom_;
  std::string label_;
};

/// Vector of control channels b(t) = (b_1(t), ..., b_r(t)).
class ControlSignal {
 public:
  ControlSignal() = default;
  explicit ControlSignal(std::vector<Signal> channels) : channels_(std::move(channels)) {}
  static ControlSignal zero(int dim) { return ControlSignal(std::vector<Signal>(dim)); }
  static ControlSignal constant(const std::vector<double>& values);

  int dim() const { return static_cast<int>(channels_.size()); }
  const Signal& channel(int i) const { return channels_.at(static_cast<std::size_t>(i)); }
  Vec operator()(double t) const;

 private:
  std::vector<Signal> channels_;
};

/// Uniform grid 0, step, ..., T (T included even when not a multiple of step).
std::vector<double> uniform_grid(double t_end, double step);

}  // namespace liesys
