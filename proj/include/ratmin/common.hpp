#ifndef RATMIN_COMMON_HPP
#define RATMIN_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ratmin {

// Raised when a computation would exceed a caller-visible resource cap
// (table entry counts, grid sizes, SDP dimension caps). The offending
// size is carried so callers can decide to retry with other parameters.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, std::size_t size)
      : std::runtime_error(what), size_(size) {}
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

// binom(n, k) in size_t, throwing on overflow.
inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    std::size_t num = n - k + i;
    if (r > SIZE_MAX / num) throw std::overflow_error("binomial overflow");
    r = r * num / i;
  }
  return r;
}

// FNV-1a, used for hashing exponent vectors and provenance strings.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t seed = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ratmin

#endif
