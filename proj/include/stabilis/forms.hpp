#pragma once

#include <cstddef>
#include <vector>

#include "stabilis/vector.hpp"

namespace stabilis {

/// Fully symmetric homogeneous form of a fixed degree, one coefficient tensor
/// per output coordinate. Stored densely (d^k entries per output) and
/// symmetrized on construction so that entrywise comparisons are meaningful.
template <int Degree>
class HomogeneousForm {
  static_assert(Degree >= 1 && Degree <= 4);

 public:
  static constexpr int degree = Degree;

  HomogeneousForm() = default;

  /// `coefficients` holds outputs * dim^Degree entries, output-major, then
  /// row-major over the tensor indices.
  HomogeneousForm(std::size_t dim, std::size_t outputs, std::vector<double> coefficients);

  static HomogeneousForm zero(std::size_t dim, std::size_t outputs) {
    return HomogeneousForm(dim, outputs, std::vector<double>(outputs * ipow(dim), 0.0));
  }
  /// d = m = 1 form c * x^Degree.
  static HomogeneousForm scalar(double c) { return HomogeneousForm(1, 1, {c}); }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t outputs() const noexcept { return outputs_; }
  std::size_t entries_per_output() const noexcept { return ipow(dim_); }

  double coefficient(std::size_t output, const std::vector<std::size_t>& index) const;
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  /// Diagonal value T(x, ..., x).
  Value operator()(const Point& x) const;

  /// Largest deviation of any entry from its index-permuted counterparts.
  double symmetry_defect() const;

  /// Largest entrywise absolute difference.
  double max_abs_difference(const HomogeneousForm& other) const;

 private:
  static std::size_t ipow(std::size_t d) {
    std::size_t n = 1;
    for (int i = 0; i < Degree; ++i) n *= d;
    return n;
  }
  void symmetrize();

  std::size_t dim_ = 0;
  std::size_t outputs_ = 0;
  std::vector<double> coeffs_;
};

using QuadraticForm = HomogeneousForm<2>;
using CubicForm = HomogeneousForm<3>;
using QuarticForm = HomogeneousForm<4>;

extern template class HomogeneousForm<1>;
extern template class HomogeneousForm<2>;
extern template class HomogeneousForm<3>;
extern template class HomogeneousForm<4>;

}  // namespace stabilis
