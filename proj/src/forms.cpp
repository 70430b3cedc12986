#include "stabilis/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace stabilis {

namespace {

std::vector<std::size_t> decode(std::size_t flat, std::size_t dim, int degree) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree));
  for (int k = degree; k-- > 0;) {
    idx[k] = flat % dim;
    flat /= dim;
  }
  return idx;
}

std::size_t encode(const std::vector<std::size_t>& idx, std::size_t dim) {
  std::size_t flat = 0;
  for (std::size_t i : idx) flat = flat * dim + i;
  return flat;
}

std::size_t canonical(std::size_t flat, std::size_t dim, int degree) {
  auto idx = decode(flat, dim, degree);
  std::sort(idx.begin(), idx.end());
  return encode(idx, dim);
}

}  // namespace

template <int Degree>
HomogeneousForm<Degree>::HomogeneousForm(std::size_t dim, std::size_t outputs,
                                         std::vector<double> coefficients)
    : dim_(dim), outputs_(outputs), coeffs_(std::move(coefficients)) {
  if (dim_ == 0 || outputs_ == 0) throw DimensionError("forms need dim and outputs >= 1");
  if (coeffs_.size() != outputs_ * ipow(dim_))
    throw DimensionError("degree-" + std::to_string(Degree) + " form expects " +
                         std::to_string(outputs_ * ipow(dim_)) + " coefficients, got " +
                         std::to_string(coeffs_.size()));
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw InvalidValue("non-finite form coefficient");
  symmetrize();
}

template <int Degree>
void HomogeneousForm<Degree>::symmetrize() {
  const std::size_t n = ipow(dim_);
  for (std::size_t o = 0; o < outputs_; ++o) {
    double* t = coeffs_.data() + o * n;
    std::map<std::size_t, std::pair<double, int>> orbit;
    for (std::size_t f = 0; f < n; ++f) {
      auto& [sum, count] = orbit[canonical(f, dim_, Degree)];
      sum += t[f];
      ++count;
    }
    for (std::size_t f = 0; f < n; ++f) {
      const auto& [sum, count] = orbit[canonical(f, dim_, Degree)];
      t[f] = sum / count;
    }
  }
}

template <int Degree>
double HomogeneousForm<Degree>::coefficient(std::size_t output,
                                            const std::vector<std::size_t>& index) const {
  if (output >= outputs_ || index.size() != static_cast<std::size_t>(Degree))
    throw ArityError("bad form index");
  for (std::size_t i : index)
    if (i >= dim_) throw ArityError("form index out of range");
  return coeffs_[output * ipow(dim_) + encode(index, dim_)];
}

template <int Degree>
Value HomogeneousForm<Degree>::operator()(const Point& x) const {
  if (x.dim() != dim_) throw DimensionError("form evaluated at point of wrong dimension");
  const std::size_t n = ipow(dim_);
  std::vector<double> out(outputs_, 0.0);
  for (std::size_t f = 0; f < n; ++f) {
    const auto idx = decode(f, dim_, Degree);
    double mono = 1.0;
    for (std::size_t i : idx) mono *= x[i];
    for (std::size_t o = 0; o < outputs_; ++o) out[o] += coeffs_[o * n + f] * mono;
  }
  return Value(std::move(out));
}

template <int Degree>
double HomogeneousForm<Degree>::symmetry_defect() const {
  const std::size_t n = ipow(dim_);
  double worst = 0.0;
  for (std::size_t o = 0; o < outputs_; ++o)
    for (std::size_t f = 0; f < n; ++f)
      worst = std::max(worst, std::abs(coeffs_[o * n + f] - coeffs_[o * n + canonical(f, dim_, Degree)]));
  return worst;
}

template <int Degree>
double HomogeneousForm<Degree>::max_abs_difference(const HomogeneousForm& other) const {
  if (other.dim_ != dim_ || other.outputs_ != outputs_)
    throw DimensionError("comparing forms of different shape");
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    worst = std::max(worst, std::abs(coeffs_[i] - other.coeffs_[i]));
  return worst;
}

template class HomogeneousForm<1>;
template class HomogeneousForm<2>;
template class HomogeneousForm<3>;
template class HomogeneousForm<4>;

}  // namespace stabilis
