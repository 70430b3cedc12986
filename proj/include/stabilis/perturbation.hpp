#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "stabilis/norm.hpp"
#include "stabilis/vector.hpp"

namespace stabilis {

/// Custom envelope declared bounded by `sup` everywhere.
struct BoundedGrowth {
  double sup = 0.0;
};

/// Custom envelope declared sub-homogeneous of degree p:
/// phi(2x, 2y) <= 2^p phi(x, y) and phi(x/2, y/2) <= 2^-p phi(x, y).
struct PowerGrowth {
  double p = 0.0;
};

using GrowthClass = std::variant<BoundedGrowth, PowerGrowth>;

/// Upper envelope phi : X x X -> [0, inf) for the mixed difference operator.
class PerturbationBound {
 public:
  struct Constant {
    double epsilon;
  };
  struct Power {
    double theta;
    double p;
    NormSpec norm;
  };
  struct Custom {
    std::function<double(const Point&, const Point&)> evaluator;
    GrowthClass growth;
    std::string description;
  };

  static PerturbationBound constant(double epsilon);
  static PerturbationBound power(double theta, double p, NormSpec norm = {});
  static PerturbationBound custom(std::function<double(const Point&, const Point&)> evaluator,
                                  GrowthClass growth, std::string description = "custom");

  double operator()(const Point& x, const Point& y) const;

  /// True when phi vanishes identically; such envelopes are summable in
  /// either direction.
  bool identically_zero() const;
  /// Growth exponent used for direction selection and tail ratios. Bounded
  /// envelopes report 0.
  double growth_exponent() const;
  /// True when the envelope is bounded (constant, power with p = 0, or a
  /// custom envelope declared bounded).
  bool bounded() const;
  /// Declared supremum of a custom bounded envelope.
  std::optional<double> declared_sup() const;

  /// phi(x, y) -> (phi(x, y) + phi(-x, -y)) / 2, the envelope inherited by
  /// the even and odd parts. Constant and power envelopes are returned as is.
  PerturbationBound symmetrized() const;

  /// phi + c for c >= 0. Used when a nonzero f(0) is shifted out.
  PerturbationBound plus_constant(double c) const;

  const std::variant<Constant, Power, Custom>& kind() const noexcept { return kind_; }
  std::string describe() const;

 private:
  explicit PerturbationBound(std::variant<Constant, Power, Custom> kind) : kind_(std::move(kind)) {}
  std::variant<Constant, Power, Custom> kind_;
};

/// Evaluates the envelope; rejects negative or non-finite results.
double phi_eval(const PerturbationBound& bound, const Point& x, const Point& y);

}  // namespace stabilis
