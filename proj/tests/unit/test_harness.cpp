#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "stabilis/config.hpp"
#include "stabilis/difference_operators.hpp"
#include "stabilis/errors.hpp"
#include "stabilis/harness.hpp"
#include "stabilis/json_io.hpp"
#include "stabilis/samples.hpp"

using namespace stabilis;
using fixtures::at;

TEST_CASE("generators") {
  const auto x2 = generate(GeneratorSpec::scalar(1, 0, 0));
  CHECK(at(x2, -3.0) == 9.0);

  SUBCASE("trig perturbation keeps the mixed residual under 106 times the amplitude") {
    const auto f = generate(GeneratorSpec::scalar(1, 1, 1, TrigPerturbation{0.01}));
    const auto scan = scan_terms(f, equation_terms(EquationKind::mixed), grid_pairs(ProbeGrid{}.points(1)), 1e-9);
    CHECK(scan.max_residual <= 1.06);
    CHECK(scan.max_residual > 0.0);
  }
  SUBCASE("uniform noise is bounded and reproducible") {
    const auto spec = GeneratorSpec::scalar(0, 0, 0, UniformNoise{0.5, 42});
    const auto f1 = generate(spec);
    const auto f2 = generate(spec);
    const auto other = generate(GeneratorSpec::scalar(0, 0, 0, UniformNoise{0.5, 43}));
    int differs = 0;
    for (const auto& x : ProbeGrid{}.points(1)) {
      CHECK(std::abs(f1(x)[0]) <= 0.5);
      CHECK(f1(x)[0] == f2(x)[0]);
      differs += f1(x)[0] != other(x)[0];
    }
    CHECK(differs > 30);
    CHECK(at(f1, 0.0) == at(f1, -0.0));
  }
  CHECK_THROWS_AS(generate(GeneratorSpec::scalar(1, 1, 1, TrigPerturbation{-1.0})), InvalidValue);
}

TEST_CASE("least-squares oracle") {
  const auto grid = ProbeGrid{}.points(1);
  const auto fit = oracle_fit(generate(GeneratorSpec::scalar(2, 3, 4)), grid);
  CHECK(fit.a.coefficients()[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.b.coefficients()[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.c.coefficients()[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(fit.residual_rms <= 1e-10);

  const auto zero = oracle_fit(zero_function(1, 1), grid);
  CHECK(zero.a.coefficients()[0] == 0.0);
  CHECK(zero.residual_rms == 0.0);

  CHECK_THROWS_AS(oracle_fit(fixtures::poly(1, 0, 0), {Point{0.0}}), SingularFit);
  std::vector<Point> zeros(10, Point{0.0});
  CHECK_THROWS_AS(oracle_fit(fixtures::poly(1, 0, 0), zeros), SingularFit);

  SUBCASE("refitting the fitted solution reproduces it") {
    const auto noisy = generate(GeneratorSpec::scalar(1, -1, 0.5, UniformNoise{0.05, 3}));
    const auto first = oracle_fit(noisy, grid);
    CHECK(first.residual_rms > 0.0);
    const auto again = oracle_fit(generate({first.a, first.b, first.c, NoPerturbation{}, 2.0}), grid);
    CHECK(again.a.max_abs_difference(first.a) <= 1e-12);
    CHECK(again.b.max_abs_difference(first.b) <= 1e-12);
    CHECK(again.c.max_abs_difference(first.c) <= 1e-12);
  }
  SUBCASE("tensor bases in two dimensions") {
    const QuadraticForm a(2, 2, {1, 2, 2, 0, 0, 0.5, 0.5, 1});
    const auto cz = CubicForm::zero(2, 2);
    std::vector<double> qc(32, 0.0);
    qc[5] = 1.0;
    const QuarticForm c(2, 2, qc);
    const auto f = generate({a, cz, c, NoPerturbation{}, 2.0});
    const auto fit2 = oracle_fit(f, ProbeGrid{2.0, 7}.points(2));
    CHECK(fit2.a.max_abs_difference(a) < 1e-10);
    CHECK(fit2.b.max_abs_difference(cz) < 1e-10);
    CHECK(fit2.c.max_abs_difference(c) < 1e-10);
  }
}

TEST_CASE("sampled functions") {
  SUBCASE("piecewise linear in one dimension, points in any order") {
    const auto f = sampled_function({{1.0}, {-1.0}, {0.0}}, {{1.0}, {3.0}, {0.0}});
    CHECK(at(f, 0.5) == doctest::Approx(0.5));
    CHECK(at(f, -0.5) == doctest::Approx(1.5));
    CHECK(at(f, 1.0) == 1.0);
    CHECK_THROWS_AS(at(f, 1.01), DomainError);
  }
  SUBCASE("multilinear on a grid") {
    std::vector<std::vector<double>> pts, vals;
    for (double x : {0.0, 1.0})
      for (double y : {-1.0, 1.0}) {
        pts.push_back({x, y});
        vals.push_back({x * y, 1.0});
      }
    const auto f = sampled_function(pts, vals);
    CHECK(f(Point{0.5, 0.0})[0] == doctest::Approx(0.0));
    CHECK(f(Point{1.0, 0.5})[0] == doctest::Approx(0.5));
    CHECK(f(Point{0.3, 0.2})[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS(f(Point{-0.1, 0.0}), DomainError);
  }
  CHECK_THROWS_AS(sampled_function({{0.0}, {0.0}}, {{1.0}, {2.0}}), SchemaError);
  CHECK_THROWS_AS(sampled_function({{0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, {{1.0}, {2.0}, {3.0}}), SchemaError);
  CHECK_THROWS_AS(sampled_function({{0.0}, {1.0}}, {{1.0}}), DimensionError);
}

TEST_CASE("JSON") {
  SUBCASE("canonical dump sorts keys and prints 17 significant digits") {
    const Json j{{"zeta", 0.1}, {"alpha", 1}, {"mid", Json::array({1.5, 2})}};
    const auto text = canonical_dump(j);
    CHECK(text.find("\"alpha\"") < text.find("\"mid\""));
    CHECK(text.find("\"mid\"") < text.find("\"zeta\""));
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(canonical_dump(Json::parse(text)) == text);
  }
  SUBCASE("forms round-trip") {
    const CubicForm c(2, 1, {1, 0, 0, 2, 0, 2, 2, -1});
    const auto j = form_to_json(c);
    CHECK(j["degree"] == 3);
    CHECK(form_from_json<3>(j).max_abs_difference(c) == 0.0);
    CHECK_THROWS_AS(form_from_json<2>(j), SchemaError);
  }
  SUBCASE("poly and samples inputs") {
    const auto f = function_from_json(Json::parse(R"({"kind":"poly","a":1,"b":2,"c":3})"));
    CHECK(at(f, 2.0) == 4 + 16 + 48);
    const auto noisy = generator_from_json(
        Json::parse(R"({"kind":"poly","a":1,"b":0,"c":0,"perturbation":{"kind":"uniform-noise","amplitude":0.1,"seed":9}})"));
    CHECK(amplitude_of(noisy.perturbation) == 0.1);
    CHECK(generator_to_json(noisy)["perturbation"]["seed"] == 9);
    const auto s = function_from_json(Json::parse(R"({"kind":"samples","points":[[0],[2]],"values":[[0],[4]]})"));
    CHECK(at(s, 1.0) == 2.0);
    const auto two_d = function_from_json(Json::parse(
        R"({"kind":"poly","a":{"degree":2,"coefficients":[[[1,0],[0,1]]]},
            "b":{"degree":3,"coefficients":[[[[0,0],[0,0]],[[0,0],[0,0]]]]},
            "c":{"degree":4,"coefficients":[[[[[0,0],[0,0]],[[0,0],[0,0]]],[[[0,0],[0,0]],[[0,0],[0,0]]]]]}})"));
    CHECK(two_d(Point{3.0, 4.0})[0] == 25.0);
  }
  SUBCASE("schema violations") {
    CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind":"spline"})")), SchemaError);
    CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind":"poly","a":1,"b":2})")), SchemaError);
    CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind":"samples","points":[[0]]})")), SchemaError);
    CHECK_THROWS_AS(function_from_json(Json::parse(R"([1,2,3])")), SchemaError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/input.json"), IoError);
  }
}
