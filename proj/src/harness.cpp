#include "stabilis/harness.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <string>

#include "stabilis/decomposition.hpp"
#include "stabilis/errors.hpp"

namespace stabilis {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double noise_at(const UniformNoise& n, const Point& x, std::size_t output) {
  std::uint64_t h = splitmix64(n.seed);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double xi = x[i] == 0.0 ? 0.0 : x[i];  // fold -0.0 into +0.0
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(xi));
  }
  h = splitmix64(h ^ output);
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return n.amplitude * (2.0 * u - 1.0);
}

struct PerturbationEval {
  const Point& x;
  std::size_t outputs;

  std::vector<double> operator()(const NoPerturbation&) const { return std::vector<double>(outputs, 0.0); }
  std::vector<double> operator()(const TrigPerturbation& t) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) s += x[i];
    std::vector<double> out(outputs);
    for (std::size_t j = 0; j < outputs; ++j) out[j] = t.amplitude * std::sin(s + static_cast<double>(j));
    return out;
  }
  std::vector<double> operator()(const UniformNoise& n) const {
    std::vector<double> out(outputs);
    for (std::size_t j = 0; j < outputs; ++j) out[j] = noise_at(n, x, j);
    return out;
  }
};

// Sorted index multisets of size k over {0..d-1}, i.e. the monomials of degree k.
std::vector<std::vector<std::size_t>> monomials(std::size_t d, int k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == d - 1) --pos;
    if (pos < 0) break;
    const std::size_t v = idx[pos] + 1;
    for (int q = pos; q < k; ++q) idx[q] = v;
  }
  return out;
}

template <int Degree>
HomogeneousForm<Degree> form_from_monomials(std::size_t d, std::size_t outputs,
                                            const std::vector<std::vector<std::size_t>>& monos,
                                            const Eigen::MatrixXd& coef, Eigen::Index row0) {
  std::size_t per_output = 1;
  for (int i = 0; i < Degree; ++i) per_output *= d;
  std::vector<double> dense(outputs * per_output, 0.0);
  for (std::size_t m = 0; m < monos.size(); ++m) {
    std::size_t flat = 0;
    for (std::size_t i : monos[m]) flat = flat * d + i;
    for (std::size_t o = 0; o < outputs; ++o)
      dense[o * per_output + flat] = coef(row0 + static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(o));
  }
  // The constructor spreads each monomial coefficient evenly over its orbit.
  return HomogeneousForm<Degree>(d, outputs, std::move(dense));
}

}  // namespace

double amplitude_of(const Perturbation& p) {
  if (const auto* t = std::get_if<TrigPerturbation>(&p)) return t->amplitude;
  if (const auto* n = std::get_if<UniformNoise>(&p)) return n->amplitude;
  return 0.0;
}

GeneratorSpec GeneratorSpec::scalar(double a, double b, double c, Perturbation p) {
  return {QuadraticForm::scalar(a), CubicForm::scalar(b), QuarticForm::scalar(c), p, 2.0};
}

void GeneratorSpec::validate() const {
  if (a.dim() != b.dim() || a.dim() != c.dim() || a.outputs() != b.outputs() || a.outputs() != c.outputs())
    throw DimensionError("generator forms must share input and output dimensions");
  const double amp = amplitude_of(perturbation);
  if (!(amp >= 0.0) || !std::isfinite(amp)) throw InvalidValue("perturbation amplitude must be finite and >= 0");
  if (!(domain_radius > 0.0) || !std::isfinite(domain_radius)) throw InvalidValue("domain radius must be positive");
}

FunctionHandle generate(const GeneratorSpec& spec) {
  spec.validate();
  const FunctionHandle exact = build_solution(spec.a, spec.b, spec.c);
  if (std::holds_alternative<NoPerturbation>(spec.perturbation)) return exact;
  const std::size_t outputs = spec.a.outputs();
  auto eval = [exact, p = spec.perturbation, outputs](const Point& x) {
    Value v = exact(x);
    v += Value(std::visit(PerturbationEval{x, outputs}, p));
    return v;
  };
  return FunctionHandle(spec.a.dim(), outputs, std::move(eval), "generated");
}

OracleFit oracle_fit(const FunctionHandle& f, const std::vector<Point>& grid) {
  const std::size_t d = f.input_dim();
  const std::size_t m = f.output_dim();
  const auto m2 = monomials(d, 2);
  const auto m3 = monomials(d, 3);
  const auto m4 = monomials(d, 4);
  const auto cols = static_cast<Eigen::Index>(m2.size() + m3.size() + m4.size());
  const auto rows = static_cast<Eigen::Index>(grid.size());
  if (rows < cols)
    throw SingularFit("oracle needs at least " + std::to_string(cols) + " grid points, got " +
                      std::to_string(grid.size()));

  Eigen::MatrixXd design(rows, cols);
  Eigen::MatrixXd rhs(rows, static_cast<Eigen::Index>(m));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Point& x = grid[static_cast<std::size_t>(r)];
    if (x.dim() != d) throw DimensionError("oracle grid point has wrong dimension");
    Eigen::Index c = 0;
    for (const auto* set : {&m2, &m3, &m4})
      for (const auto& mono : *set) {
        double v = 1.0;
        for (std::size_t i : mono) v *= x[i];
        design(r, c++) = v;
      }
    const Value y = f(x);
    for (std::size_t o = 0; o < m; ++o) rhs(r, static_cast<Eigen::Index>(o)) = y[o];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < cols)
    throw SingularFit("oracle design matrix has rank " + std::to_string(qr.rank()) + " < " +
                      std::to_string(cols));
  const Eigen::MatrixXd coef = qr.solve(rhs);
  const double rms = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(rows * static_cast<Eigen::Index>(m)));

  const auto n2 = static_cast<Eigen::Index>(m2.size());
  const auto n3 = static_cast<Eigen::Index>(m3.size());
  return {form_from_monomials<2>(d, m, m2, coef, 0), form_from_monomials<3>(d, m, m3, coef, n2),
          form_from_monomials<4>(d, m, m4, coef, n2 + n3), rms};
}

}  // namespace stabilis
