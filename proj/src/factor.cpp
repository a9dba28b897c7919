#include "hcircle/factor.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hcircle {

u64 isqrt(u64 n) {
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<u64>(r);
}

u64 isqrt128(u128 n) {
  if (n == 0) return 0;
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<u64>(r);
}

bool is_square(u64 n, u64* root) {
  u64 r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

bool is_square128(u128 n, u128* root) {
  u128 r = isqrt128(n);
  if (root) *root = r;
  return r * r == n;
}

i64 gcd(i64 a, i64 b) {
  return std::gcd(a, b);
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 quot = old_r / r;
    i64 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quot * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

namespace {

// ---------------------------------------------------------------------------
// Smallest-prime-factor table for n <= kSpfLimit, built once on first use.
// ---------------------------------------------------------------------------
const std::vector<std::uint32_t>& spf_table() {
  static std::vector<std::uint32_t> table;
  static std::once_flag once;
  std::call_once(once, [] {
    table.assign(kSpfLimit + 1, 0);
    for (u64 i = 2; i <= kSpfLimit; ++i) {
      if (table[i] != 0) continue;
      table[i] = static_cast<std::uint32_t>(i);
      if (i * i > kSpfLimit) continue;
      for (u64 j = i * i; j <= kSpfLimit; j += i)
        if (table[j] == 0) table[j] = static_cast<std::uint32_t>(i);
    }
  });
  return table;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all n < 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Pollard-Brent; returns a nontrivial factor of composite n.
u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    const u64 m = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void push_prime(std::vector<u64>& out, u64 p) { out.push_back(p); }

void split_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (n <= kSpfLimit) {
    const auto& spf = spf_table();
    while (n > 1) {
      u64 p = spf[n];
      push_prime(out, p);
      n /= p;
    }
    return;
  }
  if (miller_rabin(n)) {
    push_prime(out, n);
    return;
  }
  u64 d = pollard_brent(n);
  split_large(d, out);
  split_large(n / d, out);
}

Factorization collect(std::vector<u64>& primes) {
  std::sort(primes.begin(), primes.end());
  Factorization f;
  for (u64 p : primes) {
    if (!f.empty() && f.back().prime == p)
      ++f.back().exponent;
    else
      f.push_back({p, 1});
  }
  return f;
}

}  // namespace

bool is_prime(u64 n) {
  if (n <= kSpfLimit) return n >= 2 && spf_table()[n] == n;
  return miller_rabin(n);
}

Factorization factorize(u64 n) {
  if (n == 0 || n > (u64{1} << 63)) throw std::invalid_argument("factorize: n out of range");
  std::vector<u64> primes;
  if (n > kSpfLimit) {
    // Strip small primes first; rho then only sees cofactors without them.
    for (u64 p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
      while (n % p == 0) {
        primes.push_back(p);
        n /= p;
      }
    }
  }
  split_large(n, primes);
  return collect(primes);
}

Factorization multiply(const Factorization& a, const Factorization& b) {
  Factorization out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].prime < b[j].prime)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].prime < a[i].prime) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].prime, a[i].exponent + b[j].exponent});
      ++i;
      ++j;
    }
  }
  return out;
}

u64 evaluate(const Factorization& f) {
  u64 v = 1;
  for (const auto& pp : f)
    for (int e = 0; e < pp.exponent; ++e) v *= pp.prime;
  return v;
}

std::vector<std::uint32_t> primes_up_to(u64 limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  if (limit <= kSpfLimit) {
    const auto& spf = spf_table();
    for (u64 i = 2; i <= limit; ++i)
      if (spf[i] == i) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace hcircle
