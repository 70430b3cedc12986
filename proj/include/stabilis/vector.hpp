#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "stabilis/errors.hpp"

namespace stabilis {

/// Finite real vector tagged with the space it lives in, so that domain
/// points and target values cannot be mixed up by accident.
template <class Tag>
class Vector {
 public:
  Vector() = default;

  explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) { validate(); }
  Vector(std::initializer_list<double> coords) : coords_(coords) { validate(); }

  static Vector zeros(std::size_t dim) { return Vector(std::vector<double>(dim, 0.0)); }
  static Vector filled(std::size_t dim, double value) {
    return Vector(std::vector<double>(dim, value));
  }
  static Vector unit(std::size_t dim, std::size_t axis) {
    if (axis >= dim) throw DimensionError("unit vector axis out of range");
    std::vector<double> c(dim, 0.0);
    c[axis] = 1.0;
    return Vector(std::move(c));
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& to_vector() const noexcept { return coords_; }

  bool is_zero() const noexcept {
    for (double c : coords_)
      if (c != 0.0) return false;
    return true;
  }

  /// Multiplies by 2^k. Exact in binary floating point barring over/underflow.
  Vector scaled_pow2(int k) const {
    std::vector<double> c(coords_);
    for (double& v : c) v = std::ldexp(v, k);
    return Vector(std::move(c));
  }

  Vector operator-() const { return (*this) * -1.0; }

  friend Vector operator+(const Vector& a, const Vector& b) { return combine(a, b, 1.0); }
  friend Vector operator-(const Vector& a, const Vector& b) { return combine(a, b, -1.0); }
  friend Vector operator*(double s, const Vector& a) { return a * s; }
  friend Vector operator*(const Vector& a, double s) {
    std::vector<double> c(a.coords_);
    for (double& v : c) v *= s;
    return Vector(std::move(c));
  }
  friend Vector operator/(const Vector& a, double s) { return a * (1.0 / s); }

  Vector& operator+=(const Vector& b) { return *this = *this + b; }
  Vector& operator-=(const Vector& b) { return *this = *this - b; }

  /// Accumulates `weight * b` in place. Used by the many linear combinations
  /// of function values in the difference operators.
  Vector& add_scaled(double weight, const Vector& b) {
    check_same_dim(*this, b);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += weight * b.coords_[i];
    validate();
    return *this;
  }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  static void check_same_dim(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim())
      throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                           std::to_string(b.dim()));
  }
  static Vector combine(const Vector& a, const Vector& b, double sign) {
    check_same_dim(a, b);
    std::vector<double> c(a.coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += sign * b.coords_[i];
    return Vector(std::move(c));
  }
  void validate() const {
    for (double c : coords_)
      if (!std::isfinite(c)) throw InvalidValue("non-finite coordinate");
  }

  std::vector<double> coords_;
};

struct PointTag {};
struct ValueTag {};

/// Element of the domain space X.
using Point = Vector<PointTag>;
/// Element of the target space Y.
using Value = Vector<ValueTag>;

}  // namespace stabilis
