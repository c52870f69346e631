#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "surfcert/int_types.hpp"

namespace surfcert::nt {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                          31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                          31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

struct PrimePower {
  std::uint64_t prime;
  int exponent;
};

// Trial division up to 2^22, then a primality check on the cofactor.
// Desk scale: inputs with two factors above 2^22 are rejected rather than
// silently slow.
inline std::vector<PrimePower> factorize_u64(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factorization of zero");
  std::vector<PrimePower> out;
  auto push = [&](std::uint64_t p) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  };
  for (std::uint64_t p = 2; p <= (1ULL << 22) && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      push(p);
      n /= p;
    }
  }
  if (n > 1) {
    if (!is_prime_u64(n))
      throw std::overflow_error("cofactor " + std::to_string(n) +
                                " exceeds the trial-division range and is composite");
    push(n);
  }
  return out;
}

// g = gcd(a, b) = x*a + y*b
inline std::int64_t egcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  std::int64_t x1, y1;
  std::int64_t g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t x, y;
  std::int64_t g = egcd(static_cast<std::int64_t>(a % m), static_cast<std::int64_t>(m), x, y);
  if (g != 1) throw std::domain_error("element not invertible in Z/m");
  std::int64_t r = x % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

}  // namespace surfcert::nt
