#include "stabilis/bound_series.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace stabilis {

namespace {

int log2_weight_of(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::quadratic: return 2;
    case ComponentKind::cubic: return 3;
    case ComponentKind::quartic: return 4;
  }
  return 0;
}

ComponentKind component_of(const SeriesStrand& s) {
  switch (std::abs(s.log2_weight)) {
    case 2: return ComponentKind::quadratic;
    case 3: return ComponentKind::cubic;
    default: return ComponentKind::quartic;
  }
}

// Per-step ratio of consecutive strand terms under phi's growth class.
double step_ratio(const SeriesStrand& s, const PerturbationBound& phi, Direction direction) {
  const double p = phi.growth_exponent();
  // contraction: phi(2^{-i} .) shrinks by 2^{-p}; dilation grows by 2^{p}
  const double arg_log2 = direction == Direction::contraction ? -p : p;
  return std::exp2(s.log2_weight + arg_log2);
}

void scale_strands(std::vector<SeriesStrand>& strands, double factor) {
  for (auto& s : strands) s.coef *= factor;
}

void append(std::vector<SeriesStrand>& to, const std::vector<SeriesStrand>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

// Even-part strands for weights 2^{+-log2w * i}:
//   sum_i w^i [1/3 phi(x/2^i, x/2^{i+1}) + 16/3 phi(x/2^{i+1}, x/2^{i+1})]   (contraction)
//   pre * sum_i w^{-i} [1/3 phi(2^{i+1}x, 2^i x) + 16/3 phi(2^i x, 2^i x)]    (dilation)
std::vector<SeriesStrand> even_strands(int log2w, Direction direction, double pre) {
  if (direction == Direction::contraction)
    return {{1.0 / 3.0, log2w, 0, 1.0, 0.5}, {16.0 / 3.0, log2w, 0, 0.5, 0.5}};
  return {{pre / 3.0, -log2w, 0, 2.0, 1.0}, {pre * 16.0 / 3.0, -log2w, 0, 1.0, 1.0}};
}

}  // namespace

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::quadratic: return "quadratic";
    case ComponentKind::cubic: return "cubic";
    case ComponentKind::quartic: return "quartic";
  }
  return "?";
}

std::string_view to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::cubic: return "cubic";
    case SeriesKind::quadratic: return "quadratic";
    case SeriesKind::quartic: return "quartic";
    case SeriesKind::even_combined: return "even_combined";
    case SeriesKind::full: return "full";
  }
  return "?";
}

std::string_view to_string(ClosedForm which) {
  switch (which) {
    case ClosedForm::contraction_power: return "contraction_power";
    case ClosedForm::dilation_power: return "dilation_power";
    case ClosedForm::dilation_constant: return "dilation_constant";
  }
  return "?";
}

Direction select_direction(const PerturbationBound& phi, ComponentKind kind) {
  if (phi.bounded()) return Direction::dilation;
  const double p = phi.growth_exponent();
  const double crit = critical_exponent(kind);
  if (p < crit) return Direction::dilation;
  if (p > crit) return Direction::contraction;
  std::ostringstream os;
  os << "envelope exponent p = " << p << " equals the critical exponent of the " << to_string(kind)
     << " component; neither scaling direction is summable";
  throw CriticalExponentError(os.str());
}

bool summable(const PerturbationBound& phi, ComponentKind kind, Direction direction) {
  if (phi.identically_zero()) return true;
  const SeriesStrand probe{1.0, direction == Direction::contraction ? log2_weight_of(kind)
                                                                      : -log2_weight_of(kind),
                           0, 1.0, 1.0};
  return step_ratio(probe, phi, direction) < 1.0;
}

std::vector<SeriesStrand> series_strands(SeriesKind which, Direction direction) {
  const bool contraction = direction == Direction::contraction;
  std::vector<SeriesStrand> out;
  switch (which) {
    case SeriesKind::cubic:
      // (1/6) 8^{s i - 1} phi(0, 2^{-s i} x) + (4/6) 8^{s i - 1} phi(2^{-s i} x, 2^{-s i} x),
      // summed from i = 1 (contraction) or i = 0 (dilation)
      if (contraction)
        out = {{1.0 / 48.0, 3, 1, 0.0, 1.0}, {4.0 / 48.0, 3, 1, 1.0, 1.0}};
      else
        out = {{1.0 / 48.0, -3, 0, 0.0, 1.0}, {4.0 / 48.0, -3, 0, 1.0, 1.0}};
      break;
    case SeriesKind::quadratic:
      out = even_strands(2, direction, 1.0 / 4.0);
      break;
    case SeriesKind::quartic:
      out = even_strands(4, direction, 1.0 / 16.0);
      break;
    case SeriesKind::even_combined:
      // The dilation form keeps unit prefactors on both weights; it dominates
      // (quadratic + quartic) / 12 and is the form the closed constants sum.
      out = even_strands(2, direction, 1.0);
      append(out, even_strands(4, direction, 1.0));
      scale_strands(out, 1.0 / 12.0);
      break;
    case SeriesKind::full:
      out = series_strands(SeriesKind::even_combined, direction);
      append(out, series_strands(SeriesKind::cubic, direction));
      break;
  }
  return out;
}

SeriesValue bound_series(const BoundSeriesSpec& spec, const Point& x, int terms) {
  if (terms < 1) throw ConfigError("bound_series needs terms >= 1");
  const auto strands = series_strands(spec.which, spec.direction);
  const bool zero = spec.phi.identically_zero();
  const auto sup = spec.phi.declared_sup();
  const int sigma = spec.direction == Direction::contraction ? -1 : 1;

  for (const auto& s : strands)
    if (!zero && step_ratio(s, spec.phi, spec.direction) >= 1.0)
      throw DivergentSeries(std::string(to_string(spec.which)) + " bound diverges in " +
                            std::string(to_string(spec.direction)) + " direction for " +
                            spec.phi.describe() + " (" +
                            std::string(to_string(component_of(s))) + " strand)");

  SeriesValue out;
  for (const auto& s : strands) {
    const Point base_x = s.ax * x;
    const Point base_y = s.ay * x;
    double last = 0.0;
    for (int i = s.first; i < s.first + terms; ++i) {
      const double phi =
          phi_eval(spec.phi, base_x.scaled_pow2(sigma * i), base_y.scaled_pow2(sigma * i));
      last = phi == 0.0 ? 0.0 : s.coef * std::ldexp(phi, s.log2_weight * i);
      out.partial_sum += last;
    }
    if (zero) continue;
    if (sup) {
      const double w = std::exp2(s.log2_weight);
      out.tail_majorant += s.coef * *sup * std::ldexp(1.0, s.log2_weight * (s.first + terms)) / (1.0 - w);
    } else {
      const double r = step_ratio(s, spec.phi, spec.direction);
      out.tail_majorant += last * r / (1.0 - r);
    }
  }
  return out;
}

double corollary_constant(ClosedForm which, double theta, double p) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw RegimeError("theta must be nonnegative");
  const double r = std::exp2(p);
  switch (which) {
    case ClosedForm::contraction_power:
      if (!(p > 4.0)) throw RegimeError("contraction power constant requires p > 4");
      return (33.0 + r) / 36.0 * (1.0 / (r - 4.0) + 1.0 / (r - 16.0)) + 3.0 / (2.0 * (r - 8.0));
    case ClosedForm::dilation_power:
      if (!(p < 3.0)) throw RegimeError("dilation power constant requires p < 3");
      if (p == 2.0) throw RegimeError("dilation power constant has a pole at p = 2");
      return (33.0 + r) / 9.0 * (1.0 / (4.0 - r) + 4.0 / (16.0 - r)) + 3.0 / (2.0 * (8.0 - r));
    case ClosedForm::dilation_constant:
      return 431.0 / 420.0;
  }
  throw RegimeError("unknown closed form");
}

}  // namespace stabilis
