#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabilis/vector.hpp"

namespace stabilis {

/// Closed axis-aligned box; the evaluation domain of sample-backed handles.
struct Box {
  Point lo;
  Point hi;

  bool contains(const Point& x) const;
  /// True when the box is invariant under x -> -x.
  bool symmetric() const;
  Box scaled_pow2(int k) const { return {lo.scaled_pow2(k), hi.scaled_pow2(k)}; }
};

/// Deterministic, side-effect free map X -> Y.
///
/// Handles are cheap to copy (the evaluator is shared) and safe to call from
/// several threads at once. A handle without a domain is defined on all of X;
/// one with a domain throws DomainError outside it rather than extrapolating.
class FunctionHandle {
 public:
  using Evaluator = std::function<Value(const Point&)>;

  FunctionHandle(std::size_t input_dim, std::size_t output_dim, Evaluator evaluator,
                 std::string description = {}, std::optional<Box> domain = std::nullopt);

  Value operator()(const Point& x) const;

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t output_dim() const noexcept { return output_dim_; }
  const std::string& description() const noexcept { return description_; }
  const std::optional<Box>& domain() const noexcept { return domain_; }
  bool defined_at(const Point& x) const { return !domain_ || domain_->contains(x); }

 private:
  std::size_t input_dim_;
  std::size_t output_dim_;
  std::shared_ptr<const Evaluator> evaluator_;
  std::string description_;
  std::optional<Box> domain_;
};

FunctionHandle zero_function(std::size_t input_dim, std::size_t output_dim);

/// Pointwise sum of weighted handles. All terms must share dimensions; the
/// result's domain is the first term's (callers pass compatible domains).
FunctionHandle linear_combination(const std::vector<std::pair<double, FunctionHandle>>& terms,
                                  std::string description = {});

/// x -> scale * f(2^k x).
FunctionHandle rescaled(const FunctionHandle& f, double scale, int k, std::string description = {});

}  // namespace stabilis
