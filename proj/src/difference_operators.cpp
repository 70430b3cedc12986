#include "stabilis/difference_operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stabilis/parallel.hpp"

namespace stabilis {

namespace {

const std::vector<DifferenceTerm> kQuadratic = {
    {1, 1, 1}, {1, 1, -1}, {-2, 1, 0}, {-2, 0, 1}};
const std::vector<DifferenceTerm> kCubic = {
    {1, 2, 1}, {1, 2, -1}, {-2, 1, 1}, {-2, 1, -1}, {-12, 1, 0}};
const std::vector<DifferenceTerm> kQuartic = {
    {1, 2, 1}, {1, 2, -1}, {-4, 1, 1}, {-4, 1, -1}, {-24, 1, 0}, {6, 0, 1}};
const std::vector<DifferenceTerm> kMixed = {
    {3, 1, 2},  {3, 1, -2}, {-12, 1, 1}, {-12, 1, -1},
    {-4, 0, 3}, {18, 0, 2}, {-36, 0, 1}, {18, 1, 0}};

struct IdentitySpec {
  const char* name;
  bool even;
  std::vector<DifferenceTerm> terms;
};

// LHS - RHS of each checked identity.
const std::vector<IdentitySpec>& identity_table() {
  static const std::vector<IdentitySpec> table = {
      {"2.1", true, {{1, 0, 3}, {-6, 0, 2}, {15, 0, 1}}},
      {"2.2", true, {{1, 1, 2}, {1, 1, -2}, {-4, 1, 1}, {-4, 1, -1}, {8, 0, 1}, {-2, 0, 2}, {6, 1, 0}}},
      {"2.3", true, {{1, 2, 1}, {1, 2, -1}, {-4, 1, 1}, {-4, 1, -1}, {8, 1, 0}, {-2, 2, 0}, {6, 0, 1}}},
      {"2.13", true, {{1, 4, 0}, {-20, 2, 0}, {64, 1, 0}}},
      {"2.16", false, {{2, 0, 3}, {-9, 0, 2}, {18, 0, 1}}},
      {"2.17", false, {{1, 1, 2}, {1, 1, -2}, {-4, 1, 1}, {-4, 1, -1}, {6, 1, 0}}},
      {"2.18", false, {{1, 0, 3}, {-6, 0, 2}, {21, 0, 1}}},
      {"2.19", false, {{1, 0, 2}, {-8, 0, 1}}},
  };
  return table;
}

Point term_argument(const DifferenceTerm& t, const Point& x, const Point& y) {
  if (x.dim() != y.dim()) throw DimensionError("x and y differ in dimension");
  std::vector<double> c(x.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = t.ax * x[i] + t.ay * y[i];
  return Point(std::move(c));
}

}  // namespace

std::string_view to_string(EquationKind kind) {
  switch (kind) {
    case EquationKind::quadratic: return "quadratic";
    case EquationKind::cubic: return "cubic";
    case EquationKind::quartic: return "quartic";
    case EquationKind::mixed: return "mixed";
  }
  return "?";
}

EquationKind parse_equation_kind(std::string_view text) {
  if (text == "quadratic") return EquationKind::quadratic;
  if (text == "cubic") return EquationKind::cubic;
  if (text == "quartic") return EquationKind::quartic;
  if (text == "mixed") return EquationKind::mixed;
  throw ConfigError("unknown equation '" + std::string(text) + "'");
}

const std::vector<DifferenceTerm>& equation_terms(EquationKind kind) {
  switch (kind) {
    case EquationKind::quadratic: return kQuadratic;
    case EquationKind::cubic: return kCubic;
    case EquationKind::quartic: return kQuartic;
    case EquationKind::mixed: return kMixed;
  }
  return kMixed;
}

Residual evaluate_terms(const FunctionHandle& f, const std::vector<DifferenceTerm>& terms,
                        const Point& x, const Point& y, NormSpec norm) {
  Residual r{Value::zeros(f.output_dim()), 0.0};
  for (const auto& t : terms) {
    const Value v = f(term_argument(t, x, y));
    r.value.add_scaled(t.coef, v);
    r.scale = std::max(r.scale, std::abs(t.coef) * stabilis::norm(v, norm));
  }
  r.scale += 1.0;
  return r;
}

Residual residual(EquationKind kind, const FunctionHandle& f, const Point& x, const Point& y,
                  NormSpec norm) {
  return evaluate_terms(f, equation_terms(kind), x, y, norm);
}

Value d_mixed(const FunctionHandle& f, const Point& x, const Point& y) {
  return residual(EquationKind::mixed, f, x, y).value;
}
Value d_quadratic(const FunctionHandle& f, const Point& x, const Point& y) {
  return residual(EquationKind::quadratic, f, x, y).value;
}
Value d_cubic(const FunctionHandle& f, const Point& x, const Point& y) {
  return residual(EquationKind::cubic, f, x, y).value;
}
Value d_quartic(const FunctionHandle& f, const Point& x, const Point& y) {
  return residual(EquationKind::quartic, f, x, y).value;
}

ParityParts even_odd_split(const FunctionHandle& f) {
  if (f.domain() && !f.domain()->symmetric())
    throw DomainError("even/odd split needs a domain symmetric about the origin");
  auto even = [f](const Point& x) {
    Value v = f(x);
    v.add_scaled(1.0, f(-x));
    return 0.5 * v;
  };
  auto odd = [f](const Point& x) {
    Value v = f(x);
    v.add_scaled(-1.0, f(-x));
    return 0.5 * v;
  };
  return {FunctionHandle(f.input_dim(), f.output_dim(), even, "even(" + f.description() + ")", f.domain()),
          FunctionHandle(f.input_dim(), f.output_dim(), odd, "odd(" + f.description() + ")", f.domain())};
}

std::vector<PointPair> grid_pairs(const std::vector<Point>& grid) {
  std::vector<PointPair> out;
  out.reserve(grid.size() * grid.size());
  for (const auto& x : grid)
    for (const auto& y : grid) out.emplace_back(x, y);
  return out;
}

ScanResult scan_terms(const FunctionHandle& f, const std::vector<DifferenceTerm>& terms,
                      const std::vector<PointPair>& pairs, double tol, NormSpec norm) {
  std::vector<Residual> results(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    results[i] = evaluate_terms(f, terms, pairs[i].first, pairs[i].second, norm);
  });
  ScanResult scan;
  bool have_arg = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double mag = results[i].magnitude(norm);
    const double rel = mag / results[i].scale;
    scan.max_residual = std::max(scan.max_residual, mag);
    if (!have_arg || rel > scan.max_relative) {
      scan.max_relative = rel;
      scan.argmax = pairs[i];
      have_arg = true;
    }
    if (mag > tol * results[i].scale) scan.passed = false;
  }
  return scan;
}

bool IdentityReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const IdentityResult& e) { return e.scan.passed; });
}

double closure_shrink_factor(const Box& domain, const std::vector<DifferenceTerm>& terms,
                             const std::vector<PointPair>& pairs) {
  const std::size_t d = domain.lo.dim();
  for (std::size_t i = 0; i < d; ++i)
    if (domain.lo[i] > 0.0 || domain.hi[i] < 0.0)
      throw DomainError("grid closure cannot be evaluated: domain excludes the origin");
  double s = 1.0;
  for (const auto& [x, y] : pairs)
    for (const auto& t : terms) {
      const Point a = term_argument(t, x, y);
      for (std::size_t i = 0; i < d; ++i) {
        if (a[i] > 0.0) s = std::min(s, domain.hi[i] / a[i]);
        if (a[i] < 0.0) s = std::min(s, domain.lo[i] / a[i]);
      }
    }
  if (s <= 0.0) throw DomainError("grid closure cannot be evaluated: degenerate domain");
  // keep rounding of s * (ax x + ay y) from stepping just outside the box
  return s < 1.0 ? s * (1.0 - 1e-12) : 1.0;
}

IdentityReport verify_identity_suite(const FunctionHandle& f_e, const FunctionHandle& f_o,
                                     const std::vector<PointPair>& grid, double tol,
                                     NormSpec norm) {
  IdentityReport report;
  double s = 1.0;
  for (const auto& spec : identity_table()) {
    const auto& handle = spec.even ? f_e : f_o;
    if (handle.domain()) s = std::min(s, closure_shrink_factor(*handle.domain(), spec.terms, grid));
  }
  report.shrink_factor = s;

  std::vector<PointPair> pairs = grid;
  if (s < 1.0)
    for (auto& [x, y] : pairs) {
      x = s * x;
      y = s * y;
    }

  for (const auto& spec : identity_table()) {
    const auto& handle = spec.even ? f_e : f_o;
    report.entries.push_back({spec.name, scan_terms(handle, spec.terms, pairs, tol, norm)});
  }
  return report;
}

}  // namespace stabilis
