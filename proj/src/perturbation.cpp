#include "stabilis/perturbation.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace stabilis {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0)
    throw InvalidEnvelope(std::string(what) + " must be finite and nonnegative");
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

PerturbationBound PerturbationBound::constant(double epsilon) {
  require_nonnegative(epsilon, "epsilon");
  return PerturbationBound(Constant{epsilon});
}

PerturbationBound PerturbationBound::power(double theta, double p, NormSpec norm) {
  require_nonnegative(theta, "theta");
  // p < 0 would make phi infinite at the origin
  require_nonnegative(p, "power exponent p");
  return PerturbationBound(Power{theta, p, norm});
}

PerturbationBound PerturbationBound::custom(
    std::function<double(const Point&, const Point&)> evaluator, GrowthClass growth,
    std::string description) {
  if (!evaluator) throw InvalidEnvelope("custom envelope needs an evaluator");
  std::visit(overloaded{[](const BoundedGrowth& g) { require_nonnegative(g.sup, "declared sup"); },
                        [](const PowerGrowth& g) { require_nonnegative(g.p, "growth exponent"); }},
             growth);
  return PerturbationBound(Custom{std::move(evaluator), growth, std::move(description)});
}

double PerturbationBound::operator()(const Point& x, const Point& y) const {
  if (x.dim() != y.dim()) throw DimensionError("envelope arguments differ in dimension");
  return std::visit(
      overloaded{[](const Constant& c) { return c.epsilon; },
                 [&](const Power& pw) {
                   return pw.theta * (std::pow(norm(x, pw.norm), pw.p) +
                                      std::pow(norm(y, pw.norm), pw.p));
                 },
                 [&](const Custom& c) { return c.evaluator(x, y); }},
      kind_);
}

bool PerturbationBound::identically_zero() const {
  return std::visit(overloaded{[](const Constant& c) { return c.epsilon == 0.0; },
                               [](const Power& pw) { return pw.theta == 0.0; },
                               [](const Custom& c) {
                                 auto* b = std::get_if<BoundedGrowth>(&c.growth);
                                 return b != nullptr && b->sup == 0.0;
                               }},
                    kind_);
}

double PerturbationBound::growth_exponent() const {
  return std::visit(overloaded{[](const Constant&) { return 0.0; },
                               [](const Power& pw) { return pw.p; },
                               [](const Custom& c) {
                                 if (auto* g = std::get_if<PowerGrowth>(&c.growth)) return g->p;
                                 return 0.0;
                               }},
                    kind_);
}

bool PerturbationBound::bounded() const {
  return std::visit(overloaded{[](const Constant&) { return true; },
                               [](const Power& pw) { return pw.p == 0.0; },
                               [](const Custom& c) {
                                 return std::holds_alternative<BoundedGrowth>(c.growth);
                               }},
                    kind_);
}

std::optional<double> PerturbationBound::declared_sup() const {
  if (auto* c = std::get_if<Custom>(&kind_))
    if (auto* b = std::get_if<BoundedGrowth>(&c->growth)) return b->sup;
  return std::nullopt;
}

PerturbationBound PerturbationBound::symmetrized() const {
  const auto* c = std::get_if<Custom>(&kind_);
  if (c == nullptr) return *this;
  auto inner = c->evaluator;
  return custom([inner](const Point& x, const Point& y) { return 0.5 * (inner(x, y) + inner(-x, -y)); },
                c->growth, "sym(" + c->description + ")");
}

PerturbationBound PerturbationBound::plus_constant(double shift) const {
  require_nonnegative(shift, "envelope shift");
  if (shift == 0.0) return *this;
  return std::visit(
      overloaded{
          [&](const Constant& c) { return constant(c.epsilon + shift); },
          [&](const Power& pw) -> PerturbationBound {
            if (pw.p != 0.0) throw ConfigError("cannot add a constant to an unbounded power envelope");
            return constant(2.0 * pw.theta + shift);
          },
          [&](const Custom& c) -> PerturbationBound {
            auto* b = std::get_if<BoundedGrowth>(&c.growth);
            if (b == nullptr) throw ConfigError("cannot add a constant to an unbounded custom envelope");
            auto inner = c.evaluator;
            return custom([inner, shift](const Point& x, const Point& y) { return inner(x, y) + shift; },
                          BoundedGrowth{b->sup + shift}, c.description + "+const");
          }},
      kind_);
}

std::string PerturbationBound::describe() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const Constant& c) { os << "constant:" << shortest(c.epsilon); },
                        [&](const Power& pw) { os << "power:" << shortest(pw.theta) << ',' << shortest(pw.p); },
                        [&](const Custom& c) { os << c.description; }},
             kind_);
  return os.str();
}

double phi_eval(const PerturbationBound& bound, const Point& x, const Point& y) {
  const double v = bound(x, y);
  if (!std::isfinite(v)) throw InvalidEnvelope("envelope returned a non-finite value");
  if (v < 0.0) throw InvalidEnvelope("envelope returned a negative value");
  return v;
}

}  // namespace stabilis
