#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "wdcond/error.hpp"

namespace wdcond::nt {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Inverse modulo a prime.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q) {
  require(a % q != 0, ErrorKind::invalid_argument, "zero has no inverse mod q");
  return pow_mod(a, q - 2, q);
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::int64_t totient(std::int64_t n) {
  std::int64_t result = n;
  for (auto p : prime_divisors(n)) result = result / p * (p - 1);
  return result;
}

/// Smallest generator of (Z/q)^*, q prime.
inline std::uint64_t primitive_root(std::uint64_t q) {
  if (q == 2) return 1;
  const auto factors = prime_divisors(static_cast<std::int64_t>(q - 1));
  for (std::uint64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (auto f : factors) {
      if (pow_mod(g, (q - 1) / static_cast<std::uint64_t>(f), q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(ErrorKind::invalid_argument, "no primitive root");
}

/// Returns k with n = p^k, or -1 when n is not a power of p.
inline int log_exact(std::int64_t n, std::int64_t p) {
  int k = 0;
  while (n > 1 && n % p == 0) {
    n /= p;
    ++k;
  }
  return n == 1 ? k : -1;
}

}  // namespace wdcond::nt
