#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabilis/bound_series.hpp"
#include "stabilis/config.hpp"
#include "stabilis/forms.hpp"
#include "stabilis/function_handle.hpp"
#include "stabilis/perturbation.hpp"

namespace stabilis {

/// One extracted component: the iterate at the stopping index together with
/// the a-priori bounds that certify it.
///
/// For the cubic component `component` approximates C with
/// ||f_o - C|| <= certified_bound. For the quadratic and quartic components
/// it approximates the raw limits Q_o1 of g and Q_o2 of h, bounded against g
/// and h respectively; normalize_components turns them into Q1 and Q2.
struct ComponentEstimate {
  ComponentKind kind;
  FunctionHandle component;
  Direction direction_used;
  int iterations = 0;
  bool converged = false;
  double last_delta = 0.0;
  std::vector<Point> probes;
  std::vector<double> certified_bound;  // per probe, full series value
  std::vector<double> limit_tail;       // per probe, series remainder after `iterations` terms
};

/// The n-th iterate of the component's limit sequence:
///   cubic      8^{s n} f_o(2^{-s n} x)
///   quadratic  4^{s n} g(2^{-s n} x),  g = f_e(2x) - 16 f_e(x)
///   quartic    16^{s n} h(2^{-s n} x), h = f_e(2x) - 4 f_e(x)
/// with s = +1 for contraction and -1 for dilation.
FunctionHandle component_iterate(ComponentKind kind, const FunctionHandle& input,
                                 Direction direction, int n);

/// The bound series certifying a single component.
SeriesKind series_for(ComponentKind kind);

/// Iterates until the largest change over the probe grid drops to the
/// tolerance. Throws ParityError if the input lacks the required parity,
/// DivergentSeries if an explicit direction is not summable for phi,
/// ArgumentCapExceeded when a dilation argument would exceed the cap, and
/// NoConvergence when max_iterations is reached.
ComponentEstimate extract_cubic_stable(const FunctionHandle& f_o, const PerturbationBound& phi,
                                       const ExtractionConfig& cfg);
ComponentEstimate extract_quadratic_stable(const FunctionHandle& f_e, const PerturbationBound& phi,
                                           const ExtractionConfig& cfg);
ComponentEstimate extract_quartic_stable(const FunctionHandle& f_e, const PerturbationBound& phi,
                                         const ExtractionConfig& cfg);

/// Q1 = -Q_o1 / 12, Q2 = Q_o2 / 12.
std::pair<FunctionHandle, FunctionHandle> normalize_components(const ComponentEstimate& q_o1,
                                                               const ComponentEstimate& q_o2);

struct DecompositionReport {
  FunctionHandle quadratic_part;  // Q1
  FunctionHandle cubic_part;      // C
  FunctionHandle quartic_part;    // Q2
  FunctionHandle reconstruction;  // shift + Q1 + C + Q2

  ComponentEstimate quadratic;  // raw Q_o1 estimate
  ComponentEstimate cubic;
  ComponentEstimate quartic;    // raw Q_o2 estimate

  // Coefficient tensors read off the components; absent when the component
  // cannot be evaluated at the unit-vector sums (bounded sample domains).
  std::optional<QuadraticForm> quadratic_form;
  std::optional<CubicForm> cubic_form;
  std::optional<QuarticForm> quartic_form;

  Value shift;                  // f(0), removed before extraction
  PerturbationBound phi_used;   // envelope the bounds were computed with
  std::vector<Point> probes;
  std::vector<double> certified_bound;
  std::vector<double> residual;  // ||f - reconstruction|| per probe
  double residual_sup = 0.0;
  bool envelope_violated = false;
  std::vector<std::string> warnings;

  int iterations_used(ComponentKind kind) const;
  Direction direction_used(ComponentKind kind) const;
};

/// Splits f into even and odd parts, extracts all three components and
/// certifies the reconstruction with the combined bound series.
DecompositionReport extract_all(const FunctionHandle& f, const PerturbationBound& phi,
                                const ExtractionConfig& cfg);

}  // namespace stabilis
