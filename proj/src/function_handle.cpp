#include "stabilis/function_handle.hpp"

#include <memory>

namespace stabilis {

bool Box::contains(const Point& x) const {
  if (x.dim() != lo.dim()) throw DimensionError("point dimension does not match domain");
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

bool Box::symmetric() const {
  for (std::size_t i = 0; i < lo.dim(); ++i)
    if (lo[i] != -hi[i]) return false;
  return true;
}

FunctionHandle::FunctionHandle(std::size_t input_dim, std::size_t output_dim,
                               Evaluator evaluator, std::string description,
                               std::optional<Box> domain)
    : input_dim_(input_dim),
      output_dim_(output_dim),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      description_(std::move(description)),
      domain_(std::move(domain)) {
  if (input_dim_ == 0 || output_dim_ == 0)
    throw DimensionError("function handles need input and output dimension >= 1");
  if (domain_ && (domain_->lo.dim() != input_dim_ || domain_->hi.dim() != input_dim_))
    throw DimensionError("domain box dimension does not match input dimension");
}

Value FunctionHandle::operator()(const Point& x) const {
  if (x.dim() != input_dim_)
    throw DimensionError("expected point of dimension " + std::to_string(input_dim_) +
                         ", got " + std::to_string(x.dim()));
  if (domain_ && !domain_->contains(x))
    throw DomainError("point outside the domain of '" + description_ + "'");
  Value v = (*evaluator_)(x);
  if (v.dim() != output_dim_) throw DimensionError("evaluator returned wrong output dimension");
  return v;
}

FunctionHandle zero_function(std::size_t input_dim, std::size_t output_dim) {
  return FunctionHandle(
      input_dim, output_dim, [output_dim](const Point&) { return Value::zeros(output_dim); },
      "0");
}

FunctionHandle linear_combination(const std::vector<std::pair<double, FunctionHandle>>& terms,
                                  std::string description) {
  if (terms.empty()) throw ConfigError("linear_combination needs at least one term");
  const auto& head = terms.front().second;
  for (const auto& [w, f] : terms)
    if (f.input_dim() != head.input_dim() || f.output_dim() != head.output_dim())
      throw DimensionError("linear_combination terms have mismatched dimensions");
  auto eval = [terms, m = head.output_dim()](const Point& x) {
    Value acc = Value::zeros(m);
    for (const auto& [w, f] : terms) acc.add_scaled(w, f(x));
    return acc;
  };
  return FunctionHandle(head.input_dim(), head.output_dim(), std::move(eval),
                        std::move(description), head.domain());
}

FunctionHandle rescaled(const FunctionHandle& f, double scale, int k, std::string description) {
  std::optional<Box> domain;
  if (f.domain()) domain = f.domain()->scaled_pow2(-k);
  auto eval = [f, scale, k](const Point& x) { return scale * f(x.scaled_pow2(k)); };
  return FunctionHandle(f.input_dim(), f.output_dim(), std::move(eval), std::move(description),
                        std::move(domain));
}

}  // namespace stabilis
