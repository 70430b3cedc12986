#include "stabilis/decomposition.hpp"

#include <algorithm>
#include <string>

namespace stabilis {

FunctionHandle extract_g(const FunctionHandle& f_e) {
  return linear_combination({{1.0, rescaled(f_e, 1.0, 1)}, {-16.0, f_e}},
                            "g[" + f_e.description() + "]");
}

FunctionHandle extract_h(const FunctionHandle& f_e) {
  return linear_combination({{1.0, rescaled(f_e, 1.0, 1)}, {-4.0, f_e}},
                            "h[" + f_e.description() + "]");
}

FunctionHandle recombine(const FunctionHandle& g, const FunctionHandle& h) {
  return linear_combination({{1.0 / 12.0, h}, {-1.0 / 12.0, g}}, "(h-g)/12");
}

Value polarize_quadratic(const FunctionHandle& f, const Point& x, const Point& y) {
  Value v = f(x + y);
  v.add_scaled(-1.0, f(x - y));
  return 0.25 * v;
}

Residual polarization_defect(const FunctionHandle& f, const Point& x1, const Point& x2,
                             const Point& y, double a, double b, NormSpec norm) {
  const Value combined = polarize_quadratic(f, a * x1 + b * x2, y);
  const Value b1 = polarize_quadratic(f, x1, y);
  const Value b2 = polarize_quadratic(f, x2, y);
  Residual r{combined, 0.0};
  r.value.add_scaled(-a, b1);
  r.value.add_scaled(-b, b2);
  r.scale = 1.0 + std::max({stabilis::norm(combined, norm), std::abs(a) * stabilis::norm(b1, norm),
                            std::abs(b) * stabilis::norm(b2, norm)});
  return r;
}

Value multilinearize(const FunctionHandle& f, int degree, const std::vector<Point>& args) {
  if (degree < 2 || degree > 4) throw ArityError("multilinearize supports degree 2, 3 or 4");
  if (args.size() != static_cast<std::size_t>(degree))
    throw ArityError("multilinearize of degree " + std::to_string(degree) + " needs " +
                     std::to_string(degree) + " arguments, got " + std::to_string(args.size()));
  for (const auto& a : args)
    if (a.dim() != f.input_dim()) throw DimensionError("multilinearize argument has wrong dimension");

  Value acc = Value::zeros(f.output_dim());
  const unsigned subsets = 1u << degree;
  for (unsigned mask = 0; mask < subsets; ++mask) {
    Point sum = Point::zeros(f.input_dim());
    int size = 0;
    for (int i = 0; i < degree; ++i)
      if (mask & (1u << i)) {
        sum += args[i];
        ++size;
      }
    acc.add_scaled(((degree - size) % 2 == 0) ? 1.0 : -1.0, f(sum));
  }
  double factorial = 1.0;
  for (int i = 2; i <= degree; ++i) factorial *= i;
  return acc / factorial;
}

template <int Degree>
HomogeneousForm<Degree> recover_form(const FunctionHandle& f) {
  const std::size_t d = f.input_dim();
  const std::size_t m = f.output_dim();
  std::size_t n = 1;
  for (int i = 0; i < Degree; ++i) n *= d;
  std::vector<double> coeffs(m * n, 0.0);
  std::vector<std::size_t> idx(Degree, 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rest = flat;
    for (int k = Degree; k-- > 0;) {
      idx[k] = rest % d;
      rest /= d;
    }
    // one evaluation per multiset; other permutations copy it
    if (!std::is_sorted(idx.begin(), idx.end())) continue;
    std::vector<Point> args;
    for (std::size_t i : idx) args.push_back(Point::unit(d, i));
    const Value v = multilinearize(f, Degree, args);
    auto perm = idx;
    do {
      std::size_t pf = 0;
      for (std::size_t i : perm) pf = pf * d + i;
      for (std::size_t o = 0; o < m; ++o) coeffs[o * n + pf] = v[o];
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return HomogeneousForm<Degree>(d, m, std::move(coeffs));
}

template HomogeneousForm<2> recover_form<2>(const FunctionHandle&);
template HomogeneousForm<3> recover_form<3>(const FunctionHandle&);
template HomogeneousForm<4> recover_form<4>(const FunctionHandle&);

template <int Degree>
FunctionHandle form_handle(const HomogeneousForm<Degree>& form, std::string description) {
  if (description.empty()) description = "form" + std::to_string(Degree);
  return FunctionHandle(form.dim(), form.outputs(), [form](const Point& x) { return form(x); },
                        std::move(description));
}

template FunctionHandle form_handle<2>(const HomogeneousForm<2>&, std::string);
template FunctionHandle form_handle<3>(const HomogeneousForm<3>&, std::string);
template FunctionHandle form_handle<4>(const HomogeneousForm<4>&, std::string);

FunctionHandle build_solution(const QuadraticForm& q1, const CubicForm& c, const QuarticForm& q2) {
  if (q1.dim() != c.dim() || q1.dim() != q2.dim() || q1.outputs() != c.outputs() ||
      q1.outputs() != q2.outputs())
    throw DimensionError("forms of an exact solution must share dimensions");
  auto eval = [q1, c, q2](const Point& x) {
    Value v = q1(x);
    v.add_scaled(1.0, c(x));
    v.add_scaled(1.0, q2(x));
    return v;
  };
  return FunctionHandle(q1.dim(), q1.outputs(), std::move(eval), "Q1+C+Q2");
}

}  // namespace stabilis
