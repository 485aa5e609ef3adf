#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qwalk {

/// Raised when a request exceeds an enumeration or storage cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr int kDefaultMaxPathSteps = 24;
inline constexpr int kDefaultDenseDecoherenceSteps = 12;
// k is stored in 64 bits; the DFS keeps n + 1 partial products.
inline constexpr int kHardMaxPathSteps = 62;

/// Path-enumeration cap: QWALK_MAX_N if set, else 24.
inline int max_path_steps() {
  if (const char* env = std::getenv("QWALK_MAX_N"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end == '\0' && v >= 1 && v <= kHardMaxPathSteps) return static_cast<int>(v);
    throw std::invalid_argument(std::string("QWALK_MAX_N must be an integer in [1, 62], got '") +
                                env + "'");
  }
  return kDefaultMaxPathSteps;
}

inline void require_enumerable(int n) {
  if (n < 1) throw std::invalid_argument("path enumeration needs n >= 1, got " + std::to_string(n));
  const int cap = max_path_steps();
  if (n > cap)
    throw CapExceeded("n = " + std::to_string(n) + " exceeds the path enumeration cap " +
                      std::to_string(cap) + " (set QWALK_MAX_N to raise it)");
}

}  // namespace qwalk
