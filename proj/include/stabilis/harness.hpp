#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "stabilis/forms.hpp"
#include "stabilis/function_handle.hpp"

namespace stabilis {

struct NoPerturbation {};

/// amplitude * sin(x_1 + ... + x_d + j) on output coordinate j.
struct TrigPerturbation {
  double amplitude = 0.0;
};

/// Uniform noise in [-amplitude, amplitude], a pure function of the seed and
/// the bit pattern of the argument, so repeated evaluation is reproducible.
struct UniformNoise {
  double amplitude = 0.0;
  std::uint64_t seed = 0;
};

using Perturbation = std::variant<NoPerturbation, TrigPerturbation, UniformNoise>;

double amplitude_of(const Perturbation& p);

struct GeneratorSpec {
  QuadraticForm a;
  CubicForm b;
  QuarticForm c;
  Perturbation perturbation = NoPerturbation{};
  double domain_radius = 2.0;  // region the oracle and probes are expected to cover

  /// d = m = 1 spec for a x^2 + b x^3 + c x^4.
  static GeneratorSpec scalar(double a, double b, double c, Perturbation p = NoPerturbation{});

  void validate() const;
};

/// a(x) + b(x) + c(x) + perturbation(x), defined on all of R^d.
FunctionHandle generate(const GeneratorSpec& spec);

struct OracleFit {
  QuadraticForm a;
  CubicForm b;
  QuarticForm c;
  double residual_rms = 0.0;
};

/// Least-squares fit over the monomials of degree 2, 3 and 4, independent of
/// the extraction machinery. Throws SingularFit when the design matrix is
/// rank deficient.
OracleFit oracle_fit(const FunctionHandle& f, const std::vector<Point>& grid);

}  // namespace stabilis
