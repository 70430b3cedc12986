#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stabilis/function_handle.hpp"
#include "stabilis/norm.hpp"

namespace stabilis {

/// quadratic: f(x+y)+f(x-y) = 2f(x)+2f(y)
/// cubic:     f(2x+y)+f(2x-y) = 2f(x+y)+2f(x-y)+12f(x)
/// quartic:   f(2x+y)+f(2x-y) = 4(f(x+y)+f(x-y))+24f(x)-6f(y)
/// mixed:     3(f(x+2y)+f(x-2y)) = 12(f(x+y)+f(x-y))+4f(3y)-18f(2y)+36f(y)-18f(x)
enum class EquationKind { quadratic, cubic, quartic, mixed };

std::string_view to_string(EquationKind kind);
EquationKind parse_equation_kind(std::string_view text);

/// One term `coef * f(ax*x + ay*y)` of a linear difference expression.
struct DifferenceTerm {
  double coef;
  double ax;
  double ay;
};

/// A residual together with the magnitude of its largest term. The terms
/// cancel catastrophically for large arguments, so residuals are judged
/// relative to `scale = 1 + max_k |coef_k * f(arg_k)|`.
struct Residual {
  Value value;
  double scale = 1.0;

  double magnitude(NormSpec norm = {}) const { return stabilis::norm(value, norm); }
  bool within(double tol, NormSpec norm = {}) const { return magnitude(norm) <= tol * scale; }
};

const std::vector<DifferenceTerm>& equation_terms(EquationKind kind);

Residual evaluate_terms(const FunctionHandle& f, const std::vector<DifferenceTerm>& terms,
                        const Point& x, const Point& y, NormSpec norm = {});

/// LHS - RHS of the chosen equation at (x, y).
Residual residual(EquationKind kind, const FunctionHandle& f, const Point& x, const Point& y,
                  NormSpec norm = {});

/// The mixed operator D_f(x,y) = 3[f(x+2y)+f(x-2y)] - 12[f(x+y)+f(x-y)]
///                              - 4f(3y) + 18f(2y) - 36f(y) + 18f(x).
Value d_mixed(const FunctionHandle& f, const Point& x, const Point& y);
Value d_quadratic(const FunctionHandle& f, const Point& x, const Point& y);
Value d_cubic(const FunctionHandle& f, const Point& x, const Point& y);
Value d_quartic(const FunctionHandle& f, const Point& x, const Point& y);

struct ParityParts {
  FunctionHandle even;
  FunctionHandle odd;
};

/// f_e(x) = (f(x)+f(-x))/2, f_o(x) = (f(x)-f(-x))/2. A handle with a domain
/// must have a domain symmetric about the origin.
ParityParts even_odd_split(const FunctionHandle& f);

using PointPair = std::pair<Point, Point>;

/// All pairs (x, y) drawn from `grid`.
std::vector<PointPair> grid_pairs(const std::vector<Point>& grid);

struct ScanResult {
  double max_residual = 0.0;  // largest |residual|
  double max_relative = 0.0;  // largest |residual| / scale
  PointPair argmax;           // pair attaining max_relative
  bool passed = true;         // every pair within tol * scale
};

/// Evaluates a difference expression over a list of pairs. Ties resolve to
/// the first pair in list order.
ScanResult scan_terms(const FunctionHandle& f, const std::vector<DifferenceTerm>& terms,
                      const std::vector<PointPair>& pairs, double tol, NormSpec norm = {});

struct IdentityResult {
  std::string identity;  // "2.1", "2.2", ...
  ScanResult scan;
};

struct IdentityReport {
  std::vector<IdentityResult> entries;
  double shrink_factor = 1.0;  // uniform factor applied to the grid

  bool all_passed() const;
};

/// Checks the even-part identities (2.1, 2.2, 2.3, 2.13) on f_e and the
/// odd-part identities (2.16, 2.17, 2.18, 2.19) on f_o. When the handles
/// carry a domain the grid is shrunk uniformly so that every argument
/// (up to 4x, 3y, x +- 2y, 2x +- y) stays inside it.
IdentityReport verify_identity_suite(const FunctionHandle& f_e, const FunctionHandle& f_o,
                                     const std::vector<PointPair>& grid, double tol,
                                     NormSpec norm = {});

/// Largest factor s in (0, 1] such that every argument of `terms` at every
/// scaled pair s*(x, y) lies in `domain`.
double closure_shrink_factor(const Box& domain, const std::vector<DifferenceTerm>& terms,
                             const std::vector<PointPair>& pairs);

}  // namespace stabilis
