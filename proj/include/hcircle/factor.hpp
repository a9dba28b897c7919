// Integer helpers and prime factorization.
//
// Factorization uses a smallest-prime-factor table for n <= kSpfLimit and
// trial division + deterministic Miller-Rabin + Pollard-Brent rho above it.
// The table is built lazily, once, and is safe to share between threads.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hcircle {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

struct PrimePower {
  u64 prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

inline constexpr u64 kSpfLimit = 10'000'000;

// floor(sqrt(n)), exact.
u64 isqrt(u64 n);
u64 isqrt128(u128 n);
// true and sets root if n is a perfect square.
bool is_square(u64 n, u64* root = nullptr);
bool is_square128(u128 n, u128* root = nullptr);

i64 gcd(i64 a, i64 b);
// Returns g = gcd(a,b) and x,y with a*x + b*y = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);
// Least nonnegative residue.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime(u64 n);

// Complete factorization, primes ascending. factorize(1) is empty.
// Requires 1 <= n <= 2^63.
Factorization factorize(u64 n);

// Merge two factorizations of coprime-or-not integers (product).
Factorization multiply(const Factorization& a, const Factorization& b);

u64 evaluate(const Factorization& f);

// All primes <= limit, ascending (Eratosthenes; limit <= 2^32).
std::vector<std::uint32_t> primes_up_to(u64 limit);

}  // namespace hcircle
