#include "stabilis/parallel.hpp"

#include <cstdlib>
#include <string>

namespace stabilis {

std::size_t thread_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("STABILIS_THREADS")) {
      try {
        const long v = std::stol(env);
        return v <= 0 ? std::size_t{1} : static_cast<std::size_t>(v);
      } catch (...) {
        return std::size_t{1};
      }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? std::size_t{1} : static_cast<std::size_t>(hw);
  }();
  return cap;
}

}  // namespace stabilis
