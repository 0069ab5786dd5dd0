#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace orelab {

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Distinct prime divisors, ascending.
inline std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// Largest power of p dividing n.
inline std::size_t p_part(std::size_t n, std::size_t p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_prime_power_of(std::size_t n, std::size_t p) { return p_part(n, p) == n; }

// p-group in the broad sense: order a power of p, trivial included.
inline bool is_prime_power(std::size_t n) { return n == 1 || prime_divisors(n).size() == 1; }

}  // namespace orelab
