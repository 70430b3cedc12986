#pragma once

#include <vector>

#include "stabilis/difference_operators.hpp"
#include "stabilis/forms.hpp"
#include "stabilis/function_handle.hpp"

namespace stabilis {

/// g(x) = f_e(2x) - 16 f_e(x). Annihilates quartic terms and maps a
/// quadratic term q to -12 q.
FunctionHandle extract_g(const FunctionHandle& f_e);

/// h(x) = f_e(2x) - 4 f_e(x). Annihilates quadratic terms and maps a
/// quartic term q to 12 q.
FunctionHandle extract_h(const FunctionHandle& f_e);

/// (h - g) / 12; inverts the pair (extract_g, extract_h) on even inputs.
FunctionHandle recombine(const FunctionHandle& g, const FunctionHandle& h);

/// B(x, y) = (f(x+y) - f(x-y)) / 4.
Value polarize_quadratic(const FunctionHandle& f, const Point& x, const Point& y);

/// B(a x1 + b x2, y) - a B(x1, y) - b B(x2, y), with the magnitude of the
/// largest of the three polarizations as scale. Zero for exact quadratics.
Residual polarization_defect(const FunctionHandle& f, const Point& x1, const Point& x2,
                             const Point& y, double a, double b, NormSpec norm = {});

/// (1/k!) (Delta_{a1} ... Delta_{ak} f)(0) with Delta_a f(x) = f(x+a) - f(x).
/// For a homogeneous polynomial of degree k this is its symmetric k-linear
/// form evaluated at the arguments.
Value multilinearize(const FunctionHandle& f, int degree, const std::vector<Point>& args);

/// Coefficient tensor of the degree-k form of f, read off by multilinearizing
/// on unit vectors.
template <int Degree>
HomogeneousForm<Degree> recover_form(const FunctionHandle& f);

extern template HomogeneousForm<2> recover_form<2>(const FunctionHandle&);
extern template HomogeneousForm<3> recover_form<3>(const FunctionHandle&);
extern template HomogeneousForm<4> recover_form<4>(const FunctionHandle&);

/// f(x) = Q1(x) + C(x) + Q2(x); an exact solution of the mixed equation.
FunctionHandle build_solution(const QuadraticForm& q1, const CubicForm& c, const QuarticForm& q2);

/// Wraps a single form as a handle.
template <int Degree>
FunctionHandle form_handle(const HomogeneousForm<Degree>& form, std::string description = {});

extern template FunctionHandle form_handle<2>(const HomogeneousForm<2>&, std::string);
extern template FunctionHandle form_handle<3>(const HomogeneousForm<3>&, std::string);
extern template FunctionHandle form_handle<4>(const HomogeneousForm<4>&, std::string);

}  // namespace stabilis
