#pragma once

#include <string_view>
#include <vector>

#include "stabilis/config.hpp"
#include "stabilis/perturbation.hpp"

namespace stabilis {

enum class ComponentKind { quadratic, cubic, quartic };

std::string_view to_string(ComponentKind kind);

/// Homogeneity degree of the component; a power envelope with exactly this
/// exponent is summable in neither direction.
constexpr int critical_exponent(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::quadratic: return 2;
    case ComponentKind::cubic: return 3;
    case ComponentKind::quartic: return 4;
  }
  return 0;
}

/// Picks the scaling direction whose summability hypothesis holds for phi:
/// dilation for bounded envelopes and exponents below the critical one,
/// contraction above it. Throws CriticalExponentError at the critical
/// exponent.
Direction select_direction(const PerturbationBound& phi, ComponentKind kind);

/// Whether the component's bound series converges for phi in `direction`.
bool summable(const PerturbationBound& phi, ComponentKind kind, Direction direction);

/// Which a-priori bound to sum.
///
///   cubic          ||f_o - C||, weights 8^{s i - 1}
///   quadratic      ||g - Q_o1||, weights 4^{+-i}
///   quartic        ||h - Q_o2||, weights 16^{+-i}
///   even_combined  ||f_e - Q1 - Q2||, weights (4^{+-i} + 16^{+-i}) / 12
///   full           even_combined + cubic
enum class SeriesKind { cubic, quadratic, quartic, even_combined, full };

std::string_view to_string(SeriesKind kind);

struct BoundSeriesSpec {
  SeriesKind which;
  PerturbationBound phi;
  Direction direction;
};

struct SeriesValue {
  double partial_sum = 0.0;
  double tail_majorant = 0.0;

  double total() const { return partial_sum + tail_majorant; }
};

/// One geometric strand of a bound series:
///   sum_{i >= first} coef * 2^{log2_weight * i} * phi(ax * 2^{-s i} x, ay * 2^{-s i} x)
/// with s = +1 for contraction and -1 for dilation.
struct SeriesStrand {
  double coef;
  int log2_weight;
  int first;
  double ax;
  double ay;
};

std::vector<SeriesStrand> series_strands(SeriesKind which, Direction direction);

/// Truncated series (the first `terms` indices of every strand) plus a
/// majorant of the remainder: last_term * r / (1 - r) with r the per-step
/// ratio implied by phi's growth class, or sup * coef * sum w^i for custom
/// envelopes declared bounded. Throws DivergentSeries when some strand does
/// not converge for phi.
SeriesValue bound_series(const BoundSeriesSpec& spec, const Point& x, int terms);

/// Closed-form coefficients of the power-type and constant bounds.
enum class ClosedForm {
  contraction_power,  // p > 4, multiplies theta ||x||^p
  dilation_power,     // p < 3, multiplies theta ||x||^p
  dilation_constant,  // multiplies epsilon
};

std::string_view to_string(ClosedForm which);

/// The published bracketed constant. Throws RegimeError outside the stated
/// regime of p, and at p = 2 for the dilation power form, where its
/// 1/(4 - 2^p) term has a pole.
double corollary_constant(ClosedForm which, double theta, double p);

}  // namespace stabilis
