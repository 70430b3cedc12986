#pragma once

#include <cmath>
#include <string>

#include "stabilis/function_handle.hpp"

namespace fixtures {

using stabilis::FunctionHandle;
using stabilis::Point;
using stabilis::Value;

inline FunctionHandle scalar(double (*fn)(double), std::string name) {
  return FunctionHandle(1, 1, [fn](const Point& x) { return Value{fn(x[0])}; }, std::move(name));
}

inline FunctionHandle poly(double a, double b, double c) {
  return FunctionHandle(
      1, 1,
      [a, b, c](const Point& p) {
        const double x = p[0];
        return Value{a * x * x + b * x * x * x + c * x * x * x * x};
      },
      "poly");
}

inline double at(const FunctionHandle& f, double x) { return f(Point{x})[0]; }

}  // namespace fixtures
