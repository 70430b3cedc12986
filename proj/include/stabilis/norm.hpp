#pragma once

#include <span>
#include <string_view>

#include "stabilis/vector.hpp"

namespace stabilis {

enum class NormKind { max_coordinate, euclidean };

struct NormSpec {
  NormKind kind = NormKind::max_coordinate;

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

double norm(std::span<const double> coords, NormSpec spec);

template <class Tag>
double norm(const Vector<Tag>& v, NormSpec spec = {}) {
  return norm(v.coords(), spec);
}

std::string_view to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view text);

}  // namespace stabilis
