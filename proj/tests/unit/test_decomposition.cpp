#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "stabilis/decomposition.hpp"
#include "stabilis/errors.hpp"

using namespace stabilis;
using fixtures::at;

TEST_CASE("extraction maps") {
  const double a = 1.75, c = -0.5;
  const auto fe = fixtures::poly(a, 0, c);
  const auto g = extract_g(fe);
  const auto h = extract_h(fe);
  for (double x : {-2.0, -0.3, 0.0, 1.0, 1.9}) {
    CHECK(at(g, x) == doctest::Approx(-12 * a * x * x).scale(1.0));
    CHECK(at(h, x) == doctest::Approx(12 * c * x * x * x * x).scale(1.0));
  }
  CHECK(at(extract_g(fixtures::poly(0, 0, 1)), 1.3) == 0.0);
  CHECK(at(extract_h(fixtures::poly(1, 0, 0)), 1.3) == doctest::Approx(0.0));
  CHECK(at(extract_g(zero_function(1, 1)), 0.4) == 0.0);
}

TEST_CASE("recombination") {
  const auto g = fixtures::poly(-12, 0, 0);
  const auto h = fixtures::poly(0, 0, 12);
  CHECK(at(recombine(g, h), 1.5) == doctest::Approx(1.5 * 1.5 + std::pow(1.5, 4)));
  CHECK(at(recombine(h, h), 0.8) == 0.0);
  CHECK(at(recombine(zero_function(1, 1), h), 2.0) == doctest::Approx(16.0));

  // f_e = (h - g) / 12 for arbitrary even inputs
  const FunctionHandle fe(1, 1, [](const Point& p) { return Value{std::cos(p[0]) + p[0] * p[0]}; });
  for (double x : {-1.0, 0.5, 2.0}) CHECK(at(recombine(extract_g(fe), extract_h(fe)), x) == doctest::Approx(at(fe, x)));
}

TEST_CASE("quadratic polarization") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-10, 10);
  const double a = 3.25;
  const auto f = fixtures::poly(a, 0, 0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(polarize_quadratic(f, Point{x}, Point{y})[0] == doctest::Approx(a * x * y).epsilon(1e-12).scale(1.0));
  }

  const FunctionHandle sq(2, 1, [](const Point& p) { return Value{p[0] * p[0] + p[1] * p[1]}; });
  CHECK(polarize_quadratic(sq, Point{1.0, 0.0}, Point{0.0, 1.0})[0] == 0.0);

  SUBCASE("quartic input is not bilinear") {
    const auto x4 = fixtures::poly(0, 0, 1);
    CHECK(polarize_quadratic(x4, Point{1.0}, Point{1.0})[0] == doctest::Approx(4.0));
    CHECK(polarize_quadratic(x4, Point{2.0}, Point{1.0})[0] == doctest::Approx(20.0));
    const auto defect = polarization_defect(x4, Point{1.0}, Point{1.0}, Point{1.0}, 1.0, 1.0);
    CHECK_FALSE(defect.within(1e-6));
    CHECK(polarization_defect(f, Point{1.0}, Point{-2.0}, Point{0.5}, 2.0, 3.0).within(1e-12));
  }
}

TEST_CASE("multilinearization") {
  CHECK(multilinearize(fixtures::poly(0, 1, 0), 3, {Point{1.0}, Point{1.0}, Point{1.0}})[0] == doctest::Approx(1.0));
  CHECK(multilinearize(fixtures::poly(0, 0, 1), 4, {Point{1.0}, Point{1.0}, Point{1.0}, Point{1.0}})[0] ==
        doctest::Approx(1.0));
  CHECK(multilinearize(fixtures::poly(1, 1, 1), 2, {Point{0.0}, Point{2.0}})[0] == 0.0);
  CHECK_THROWS_AS(multilinearize(fixtures::poly(1, 0, 0), 2, {Point{1.0}}), ArityError);
  CHECK_THROWS_AS(multilinearize(fixtures::poly(1, 0, 0), 5, {}), ArityError);

  SUBCASE("cubic form in two variables") {
    // f(x) = x0^2 x1: T(e0, e0, e1) = 1/3
    const FunctionHandle f(2, 1, [](const Point& p) { return Value{p[0] * p[0] * p[1]}; });
    const Point e0{1.0, 0.0}, e1{0.0, 1.0};
    CHECK(multilinearize(f, 3, {e0, e0, e1})[0] == doctest::Approx(1.0 / 3.0));
    CHECK(multilinearize(f, 3, {e1, e1, e1})[0] == doctest::Approx(0.0));
  }
}

TEST_CASE("forms round-trip through handles") {
  // f(x) = (x0^2 + 4 x0 x1 - x1^2, 3 x1^2) in R^2 -> R^2
  const QuadraticForm q(2, 2, {1.0, 2.0, 2.0, -1.0, 0.0, 0.0, 0.0, 3.0});
  const auto recovered = recover_form<2>(form_handle(q));
  CHECK(recovered.max_abs_difference(q) < 1e-12);
  CHECK(q.symmetry_defect() == 0.0);

  SUBCASE("construction symmetrizes") {
    const QuadraticForm lopsided(2, 1, {0.0, 4.0, 0.0, 0.0});
    CHECK(lopsided.coefficient(0, {0, 1}) == 2.0);
    CHECK(lopsided.coefficient(0, {1, 0}) == 2.0);
  }
  SUBCASE("exact solutions built from forms") {
    const auto f = build_solution(QuadraticForm::scalar(1), CubicForm::scalar(1), QuarticForm::scalar(1));
    CHECK(d_mixed(f, Point{1.0}, Point{1.0})[0] == 0.0);
    CHECK(at(build_solution(QuadraticForm::zero(1, 1), CubicForm::zero(1, 1), QuarticForm::zero(1, 1)), 3.0) == 0.0);
    const auto two_x2 = build_solution(QuadraticForm::scalar(2), CubicForm::zero(1, 1), QuarticForm::zero(1, 1));
    CHECK(d_quadratic(two_x2, Point{0.7}, Point{-1.1})[0] == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("random quartic forms in three variables") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<double> coeffs(81);
    for (auto& c : coeffs) c = u(rng);
    const QuarticForm t(3, 1, coeffs);
    CHECK(recover_form<4>(form_handle(t)).max_abs_difference(t) < 1e-10);
  }
  CHECK_THROWS_AS(build_solution(QuadraticForm::scalar(1), CubicForm::zero(2, 1), QuarticForm::scalar(1)),
                  DimensionError);
}
