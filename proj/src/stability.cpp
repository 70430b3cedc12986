#include "stabilis/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stabilis/decomposition.hpp"
#include "stabilis/difference_operators.hpp"
#include "stabilis/parallel.hpp"

namespace stabilis {

namespace {

int log2_scale(ComponentKind kind) { return critical_exponent(kind); }

// g and h iterates evaluate the input at twice the scaled argument.
int argument_headroom(ComponentKind kind) { return kind == ComponentKind::cubic ? 0 : 1; }

constexpr double kParityTolerance = 1e-9;

void require_parity(const FunctionHandle& f, const std::vector<Point>& probes, bool even) {
  for (const auto& x : probes) {
    const Value a = f(x);
    const Value b = f(-x);
    const Value diff = even ? a - b : a + b;
    const double scale = 1.0 + norm(a) + norm(b);
    if (norm(diff) > kParityTolerance * scale) {
      std::ostringstream os;
      os << (even ? "input is not even" : "input is not odd") << " (defect " << norm(diff)
         << " at a probe point)";
      throw ParityError(os.str());
    }
  }
}

double inscribed_radius(const Box& box) {
  double r = INFINITY;
  for (std::size_t i = 0; i < box.lo.dim(); ++i) r = std::min({r, box.hi[i], -box.lo[i]});
  if (!(r > 0.0)) throw DomainError("domain does not contain a neighbourhood of the origin");
  return r;
}

ProbeGrid fitted_probe(const ExtractionConfig& cfg, const FunctionHandle& f, int headroom) {
  ProbeGrid grid = cfg.probe;
  if (f.domain()) grid.radius = std::min(grid.radius, std::ldexp(inscribed_radius(*f.domain()), -headroom));
  return grid;
}

std::vector<Value> evaluate_all(const FunctionHandle& f, const std::vector<Point>& xs) {
  std::vector<Value> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = f(xs[i]); });
  return out;
}

Direction resolve_direction(const ExtractionConfig& cfg, const PerturbationBound& phi,
                            ComponentKind kind) {
  const Direction d = cfg.direction ? *cfg.direction : select_direction(phi, kind);
  if (!summable(phi, kind, d))
    throw DivergentSeries(std::string(to_string(kind)) + " series is not summable in " +
                          std::string(to_string(d)) + " direction for " + phi.describe());
  return d;
}

ComponentEstimate extract_component(ComponentKind kind, const FunctionHandle& input,
                                    const PerturbationBound& phi, const ExtractionConfig& cfg) {
  cfg.validate();
  const bool even = kind != ComponentKind::cubic;
  const auto probes = fitted_probe(cfg, input, argument_headroom(kind)).points(input.input_dim());
  require_parity(input, probes, even);
  const Direction direction = resolve_direction(cfg, phi, kind);

  double probe_radius = 0.0;
  for (const auto& x : probes) probe_radius = std::max(probe_radius, norm(x, cfg.norm));

  auto previous = evaluate_all(component_iterate(kind, input, direction, 0), probes);
  double delta = INFINITY;
  int n = 1;
  for (; n <= cfg.max_iterations; ++n) {
    if (direction == Direction::dilation &&
        std::ldexp(probe_radius, n + argument_headroom(kind)) > cfg.argument_cap) {
      std::ostringstream os;
      os << to_string(kind) << " dilation would evaluate at ||2^n x|| > " << cfg.argument_cap
         << " (n = " << n << ", last delta " << delta << ")";
      throw ArgumentCapExceeded(os.str());
    }
    auto current = evaluate_all(component_iterate(kind, input, direction, n), probes);
    delta = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i)
      delta = std::max(delta, norm(current[i] - previous[i], cfg.norm));
    previous = std::move(current);
    if (delta <= cfg.tolerance) break;
  }
  if (n > cfg.max_iterations) {
    std::ostringstream os;
    os << to_string(kind) << " iteration did not reach tolerance " << cfg.tolerance << " within "
       << cfg.max_iterations << " iterations (last delta " << delta << ")";
    throw NoConvergence(os.str(), delta);
  }

  ComponentEstimate est{kind,  component_iterate(kind, input, direction, n),
                        direction, n, true, delta, probes, {}, {}};
  const BoundSeriesSpec spec{series_for(kind), phi, direction};
  est.certified_bound.resize(probes.size());
  est.limit_tail.resize(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    est.certified_bound[i] = bound_series(spec, probes[i], cfg.series_terms).total();
    est.limit_tail[i] = bound_series(spec, probes[i], n).tail_majorant;
  }
  return est;
}

int envelope_check_points(std::size_t dim) {
  int k = static_cast<int>(std::floor(std::pow(150.0, 1.0 / static_cast<double>(dim))));
  k = std::clamp(k, 3, 21);
  return k % 2 == 0 ? k - 1 : k;
}

}  // namespace

SeriesKind series_for(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::quadratic: return SeriesKind::quadratic;
    case ComponentKind::cubic: return SeriesKind::cubic;
    case ComponentKind::quartic: return SeriesKind::quartic;
  }
  return SeriesKind::cubic;
}

FunctionHandle component_iterate(ComponentKind kind, const FunctionHandle& input,
                                 Direction direction, int n) {
  if (n < 0) throw ConfigError("iteration index must be >= 0");
  FunctionHandle base = kind == ComponentKind::cubic       ? input
                        : kind == ComponentKind::quadratic ? extract_g(input)
                                                           : extract_h(input);
  const int w = log2_scale(kind);
  const std::string name = std::string(to_string(kind)) + "_iterate[" + std::to_string(n) + "]";
  if (direction == Direction::contraction) return rescaled(base, std::ldexp(1.0, w * n), -n, name);
  return rescaled(base, std::ldexp(1.0, -w * n), n, name);
}

ComponentEstimate extract_cubic_stable(const FunctionHandle& f_o, const PerturbationBound& phi,
                                       const ExtractionConfig& cfg) {
  return extract_component(ComponentKind::cubic, f_o, phi, cfg);
}

ComponentEstimate extract_quadratic_stable(const FunctionHandle& f_e, const PerturbationBound& phi,
                                           const ExtractionConfig& cfg) {
  return extract_component(ComponentKind::quadratic, f_e, phi, cfg);
}

ComponentEstimate extract_quartic_stable(const FunctionHandle& f_e, const PerturbationBound& phi,
                                         const ExtractionConfig& cfg) {
  return extract_component(ComponentKind::quartic, f_e, phi, cfg);
}

std::pair<FunctionHandle, FunctionHandle> normalize_components(const ComponentEstimate& q_o1,
                                                               const ComponentEstimate& q_o2) {
  return {linear_combination({{-1.0 / 12.0, q_o1.component}}, "Q1"),
          linear_combination({{1.0 / 12.0, q_o2.component}}, "Q2")};
}

int DecompositionReport::iterations_used(ComponentKind kind) const {
  switch (kind) {
    case ComponentKind::quadratic: return quadratic.iterations;
    case ComponentKind::cubic: return cubic.iterations;
    case ComponentKind::quartic: return quartic.iterations;
  }
  return 0;
}

Direction DecompositionReport::direction_used(ComponentKind kind) const {
  switch (kind) {
    case ComponentKind::quadratic: return quadratic.direction_used;
    case ComponentKind::cubic: return cubic.direction_used;
    case ComponentKind::quartic: return quartic.direction_used;
  }
  return Direction::dilation;
}

DecompositionReport extract_all(const FunctionHandle& f, const PerturbationBound& phi,
                                const ExtractionConfig& cfg_in) {
  cfg_in.validate();
  std::vector<std::string> warnings;

  // f(0) is shifted out. A constant c contributes D_c = -22 c, so the shifted
  // function obeys the envelope phi + 22 ||c||.
  const Value shift = f(Point::zeros(f.input_dim()));
  FunctionHandle work = f;
  PerturbationBound envelope = phi.symmetrized();
  if (!shift.is_zero()) {
    work = linear_combination(
        {{1.0, f},
         {-1.0, FunctionHandle(f.input_dim(), f.output_dim(), [shift](const Point&) { return shift; })}},
        "f-f(0)");
    const double c = norm(shift, cfg_in.norm);
    std::ostringstream os;
    os.precision(17);
    os << "f(0) != 0: shifted out a constant of norm " << c;
    if (envelope.bounded()) {
      envelope = envelope.plus_constant(22.0 * c);
      os << "; envelope widened by 22*||f(0)||";
    } else {
      os << "; an unbounded envelope vanishing at the origin cannot hold, certified bound is advisory";
    }
    warnings.push_back(os.str());
  }

  ExtractionConfig cfg = cfg_in;
  cfg.probe = fitted_probe(cfg_in, work, 1);
  const auto parts = even_odd_split(work);

  // Spot-check the envelope on a coarse pair grid.
  bool violated = false;
  {
    ProbeGrid coarse{cfg.probe.radius, envelope_check_points(f.input_dim())};
    auto pairs = grid_pairs(coarse.points(f.input_dim()));
    if (work.domain()) {
      const double s = closure_shrink_factor(*work.domain(), equation_terms(EquationKind::mixed), pairs);
      for (auto& [x, y] : pairs) {
        x = s * x;
        y = s * y;
      }
    }
    std::vector<double> excess(pairs.size(), 0.0);
    parallel_for(pairs.size(), [&](std::size_t i) {
      const auto r = residual(EquationKind::mixed, work, pairs[i].first, pairs[i].second, cfg.norm);
      const double allowed = phi_eval(envelope, pairs[i].first, pairs[i].second) + 1e-9 * r.scale;
      excess[i] = r.magnitude(cfg.norm) - allowed;
    });
    const auto worst = std::max_element(excess.begin(), excess.end());
    if (worst != excess.end() && *worst > 0.0) {
      violated = true;
      const auto count = std::count_if(excess.begin(), excess.end(), [](double e) { return e > 0.0; });
      std::ostringstream os;
      os.precision(17);
      os << "envelope violated at " << count << " of " << pairs.size()
         << " checked pairs (worst excess " << *worst << "); certified bound is advisory";
      warnings.push_back(os.str());
    }
  }

  auto cubic = extract_cubic_stable(parts.odd, envelope, cfg);
  auto quadratic = extract_quadratic_stable(parts.even, envelope, cfg);
  auto quartic = extract_quartic_stable(parts.even, envelope, cfg);
  auto [q1, q2] = normalize_components(quadratic, quartic);
  const FunctionHandle& c = cubic.component;

  const std::vector<Point> probes = quadratic.probes;
  std::vector<double> bound(probes.size());
  const bool same_even_direction = quadratic.direction_used == quartic.direction_used;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    double even_part;
    if (same_even_direction)
      even_part = bound_series({SeriesKind::even_combined, envelope, quadratic.direction_used},
                               probes[i], cfg.series_terms)
                      .total();
    else
      even_part = (quadratic.certified_bound[i] + quartic.certified_bound[i]) / 12.0;
    bound[i] = even_part + cubic.certified_bound[i];
  }

  const FunctionHandle shift_handle(f.input_dim(), f.output_dim(),
                                    [shift](const Point&) { return shift; }, "f(0)");
  FunctionHandle reconstruction =
      linear_combination({{1.0, shift_handle}, {1.0, q1}, {1.0, c}, {1.0, q2}}, "f(0)+Q1+C+Q2");

  std::vector<double> resid(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    resid[i] = norm(f(probes[i]) - reconstruction(probes[i]), cfg.norm);
  });
  const double sup = resid.empty() ? 0.0 : *std::max_element(resid.begin(), resid.end());

  auto try_form = [&](auto recover) -> decltype(recover()) {
    try {
      return recover();
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  auto qf = try_form([&]() -> std::optional<QuadraticForm> { return recover_form<2>(q1); });
  auto cf = try_form([&]() -> std::optional<CubicForm> { return recover_form<3>(c); });
  auto rf = try_form([&]() -> std::optional<QuarticForm> { return recover_form<4>(q2); });

  return DecompositionReport{q1,
                             c,
                             q2,
                             reconstruction,
                             std::move(quadratic),
                             std::move(cubic),
                             std::move(quartic),
                             std::move(qf),
                             std::move(cf),
                             std::move(rf),
                             shift,
                             envelope,
                             probes,
                             std::move(bound),
                             std::move(resid),
                             sup,
                             violated,
                             std::move(warnings)};
}

}  // namespace stabilis
