#include "hcircle/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace hcircle {

Discriminant::Discriminant(int q) : q_(q) {
  if (std::find(kAllQ.begin(), kAllQ.end(), q) == kAllQ.end())
    throw std::invalid_argument("q must be one of 3,4,7,8,11,19,43,67,163, got " + std::to_string(q));
  two_mu_ = (q == 4 || q == 8) ? 0 : 1;
  if (two_mu_ == 1 && q % 4 != 3) throw std::logic_error("odd q must be 3 mod 4");
  unit_count_ = q == 3 ? 6 : (q == 4 ? 4 : 2);
  norm_z_ = (q + two_mu_) / 4;
}

double Discriminant::lambda() const { return std::sqrt(static_cast<double>(q_)) / 2.0; }

std::complex<double> Discriminant::z() const { return {two_mu_ / 2.0, lambda()}; }

// ---------------------------------------------------------------------------
// Kronecker symbol
// ---------------------------------------------------------------------------
namespace {

int jacobi(i64 a, i64 n) {
  // n odd positive
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    i64 r = mod(a, 8);
    if ((v & 1) && (r == 3 || r == 5)) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(a, n);
}

}  // namespace

int chi(const Discriminant& field, i64 n) { return kronecker(-static_cast<i64>(field.q()), n); }

u64 norm(const Discriminant& field, const AlgebraicInt& a) {
  i128 x = twice_real(field, a);
  i128 four_n = x * x + static_cast<i128>(field.q()) * a.r * a.r;
  return static_cast<u64>(four_n / 4);
}

AlgebraicInt multiply(const Discriminant& field, const AlgebraicInt& a, const AlgebraicInt& b) {
  // z^2 = two_mu*z - |z|^2
  return {a.u * b.u - field.norm_z() * a.r * b.r, a.u * b.r + b.u * a.r + field.two_mu() * a.r * b.r};
}

AlgebraicInt conjugate(const Discriminant& field, const AlgebraicInt& a) {
  return {a.u + field.two_mu() * a.r, -a.r};
}

std::vector<AlgebraicInt> units(const Discriminant& field) {
  switch (field.q()) {
    case 3:
      return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    case 4:
      return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    default:
      return {{1, 0}, {-1, 0}};
  }
}

std::complex<double> to_complex(const Discriminant& field, const AlgebraicInt& a) {
  return {twice_real(field, a) / 2.0, static_cast<double>(a.r) * field.lambda()};
}

double element_angle(const Discriminant& field, const AlgebraicInt& a) {
  return std::atan2(static_cast<double>(a.r) * field.lambda(), twice_real(field, a) / 2.0);
}

// ---------------------------------------------------------------------------
// r_K and its memo
// ---------------------------------------------------------------------------
namespace {

class RCountCache {
 public:
  bool find(int q, u64 M, u64& out) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key(q, M));
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void insert(int q, u64 M, u64 value) {
    std::unique_lock lock(mutex_);
    if (map_.size() >= kCapacity) map_.clear();
    map_[key(q, M)] = value;
  }

 private:
  static constexpr std::size_t kCapacity = 1 << 20;
  static u64 key(int q, u64 M) { return (M << 8) | static_cast<u64>(q); }
  mutable std::shared_mutex mutex_;
  std::unordered_map<u64, u64> map_;
};

RCountCache& r_count_cache() {
  static RCountCache cache;
  return cache;
}

enum class Splitting { kSplit, kInert, kRamified };

Splitting splitting(const Discriminant& field, u64 p) {
  int c = chi(field, static_cast<i64>(p));
  return c == 1 ? Splitting::kSplit : (c == -1 ? Splitting::kInert : Splitting::kRamified);
}

}  // namespace

u64 r_count(const Discriminant& field, const Factorization& f) {
  u64 total = static_cast<u64>(field.unit_count());
  for (const auto& pp : f) {
    switch (splitting(field, pp.prime)) {
      case Splitting::kSplit:
        total *= static_cast<u64>(pp.exponent + 1);
        break;
      case Splitting::kInert:
        if (pp.exponent % 2) return 0;
        break;
      case Splitting::kRamified:
        break;
    }
  }
  return total;
}

u64 r_count(const Discriminant& field, u64 M) {
  if (M == 0) throw std::invalid_argument("r_count: M must be >= 1");
  // Only values that fit the key packing are memoized.
  const bool cacheable = M < (u64{1} << 55);
  u64 v;
  if (cacheable && r_count_cache().find(field.q(), M, v)) return v;
  v = r_count(field, factorize(M));
  if (cacheable) r_count_cache().insert(field.q(), M, v);
  return v;
}

NormedCount normed_count(const Discriminant& field, u64 M) {
  u64 v = r_count(field, M);
  return {M, v, v > 0};
}

// ---------------------------------------------------------------------------
// Element enumeration
// ---------------------------------------------------------------------------
std::vector<AlgebraicInt> enumerate_norm(const Discriminant& field, u64 M) {
  if (M == 0) throw std::invalid_argument("enumerate_norm: M must be >= 1");
  std::vector<AlgebraicInt> out;
  const i128 four_m = static_cast<i128>(4) * M;
  const i64 q = field.q();
  const i64 rmax = static_cast<i64>(isqrt128(static_cast<u128>(four_m / q)));
  for (i64 r = -rmax; r <= rmax; ++r) {
    i128 rest = four_m - static_cast<i128>(q) * r * r;
    if (rest < 0) continue;
    u128 x;
    if (!is_square128(static_cast<u128>(rest), &x)) continue;
    // 2u + two_mu*r = +-x
    for (i128 sx : {-static_cast<i128>(x), static_cast<i128>(x)}) {
      i128 twice_u = sx - static_cast<i128>(field.two_mu()) * r;
      if (twice_u % 2 != 0) continue;
      AlgebraicInt a{static_cast<i64>(twice_u / 2), r};
      if (out.empty() || !(out.back() == a)) out.push_back(a);
    }
  }
  return out;
}

namespace detail {

// Tonelli-Shanks square root of a modulo an odd prime p; a must be a QR.
u64 sqrt_mod_prime(u64 a, u64 p) {
  auto mulmod = [p](u64 x, u64 y) { return static_cast<u64>(static_cast<u128>(x) * y % p); };
  auto powmod = [&](u64 b, u64 e) {
    u64 r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  a %= p;
  if (a == 0) return 0;
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2) != p - 1) ++z;
  u64 m = static_cast<u64>(s), c = powmod(z, q), t = powmod(a, q), r = powmod(a, (q + 1) / 2);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b);
    m = i;
    c = mulmod(b, b);
    t = mulmod(t, c);
    r = mulmod(r, b);
  }
  return r;
}

// Modified Cornacchia: solves X^2 + q Y^2 = 4p for an odd prime p with
// chi(p) = 1 and returns u + r z_q with r = Y, 2u + two_mu*r = X.
AlgebraicInt cornacchia_prime_element(const Discriminant& field, u64 p) {
  const u64 q = static_cast<u64>(field.q());
  u64 x0 = sqrt_mod_prime((p - q % p) % p, p);
  // x0 must have the parity of D = -q
  if ((x0 & 1) != (q & 1)) x0 = p - x0;
  u64 a = 2 * p, b = x0;
  const u64 limit = isqrt(4 * p);
  while (b > limit) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  u64 rest = 4 * p - b * b;
  u64 y;
  if (rest % q != 0 || !is_square(rest / q, &y))
    throw std::logic_error("cornacchia failed for p = " + std::to_string(p));
  i64 X = static_cast<i64>(b), Y = static_cast<i64>(y);
  return {(X - field.two_mu() * Y) / 2, Y};
}

}  // namespace detail

AlgebraicInt prime_element(const Discriminant& field, u64 p) {
  if (p < 1'000'000 || p % 2 == 0) {
    auto elems = enumerate_norm(field, p);
    if (elems.empty()) throw std::domain_error("prime_element: " + std::to_string(p) + " is inert");
    return elems.front();
  }
  if (splitting(field, p) != Splitting::kSplit)
    throw std::domain_error("prime_element: " + std::to_string(p) + " is not split");
  return detail::cornacchia_prime_element(field, p);
}

std::vector<AlgebraicInt> norm_elements(const Discriminant& field, const Factorization& f) {
  std::vector<AlgebraicInt> acc{{1, 0}};
  for (const auto& pp : f) {
    std::vector<AlgebraicInt> local;
    switch (splitting(field, pp.prime)) {
      case Splitting::kInert: {
        if (pp.exponent % 2) return {};
        i64 v = 1;
        for (int e = 0; e < pp.exponent / 2; ++e) v *= static_cast<i64>(pp.prime);
        local.push_back({v, 0});
        break;
      }
      case Splitting::kRamified: {
        AlgebraicInt pi = prime_element(field, pp.prime);
        AlgebraicInt v{1, 0};
        for (int e = 0; e < pp.exponent; ++e) v = multiply(field, v, pi);
        local.push_back(v);
        break;
      }
      case Splitting::kSplit: {
        AlgebraicInt pi = prime_element(field, pp.prime);
        AlgebraicInt pib = conjugate(field, pi);
        std::vector<AlgebraicInt> pows{{1, 0}}, bpows{{1, 0}};
        for (int e = 0; e < pp.exponent; ++e) {
          pows.push_back(multiply(field, pows.back(), pi));
          bpows.push_back(multiply(field, bpows.back(), pib));
        }
        for (int a = 0; a <= pp.exponent; ++a)
          local.push_back(multiply(field, pows[a], bpows[pp.exponent - a]));
        break;
      }
    }
    std::vector<AlgebraicInt> next;
    next.reserve(acc.size() * local.size());
    for (const auto& x : acc)
      for (const auto& y : local) next.push_back(multiply(field, x, y));
    acc = std::move(next);
  }
  std::vector<AlgebraicInt> out;
  const auto us = units(field);
  out.reserve(acc.size() * us.size());
  for (const auto& x : acc)
    for (const auto& e : us) out.push_back(multiply(field, x, e));
  std::sort(out.begin(), out.end(), [](const AlgebraicInt& a, const AlgebraicInt& b) {
    return a.r != b.r ? a.r < b.r : a.u < b.u;
  });
  return out;
}

std::vector<AlgebraicInt> norm_elements(const Discriminant& field, u64 M) {
  if (M == 0) throw std::invalid_argument("norm_elements: M must be >= 1");
  return norm_elements(field, factorize(M));
}

bool b_indicator(const Discriminant& field, const Factorization& f) {
  for (const auto& pp : f)
    if (pp.exponent % 2 && splitting(field, pp.prime) == Splitting::kInert) return false;
  return true;
}

bool b_indicator(const Discriminant& field, u64 n) {
  if (n == 0) throw std::invalid_argument("b_indicator: n must be >= 1");
  return b_indicator(field, factorize(n));
}

OmegaPair omega_pair(const Discriminant& field, const Factorization& f) {
  OmegaPair out;
  for (const auto& pp : f) {
    if (splitting(field, pp.prime) != Splitting::kSplit) continue;
    ++out.omega;
    out.Omega += pp.exponent;
  }
  return out;
}

OmegaPair omega_pair(const Discriminant& field, u64 M) {
  if (M == 0) throw std::invalid_argument("omega_pair: M must be >= 1");
  return omega_pair(field, factorize(M));
}

// ---------------------------------------------------------------------------
// Congruence-restricted counts
// ---------------------------------------------------------------------------
namespace {

// residue_m without the norm check; -1 if no class exists.
int residue_class(const Discriminant& field, u64 M) {
  const int q = field.q();
  if (q == 8) {
    if (M % 2) return 1;
    u64 r = M % 8;
    return (r == 0 || r == 2) ? 0 : 2;
  }
  if (q == 4) {
    switch (M % 4) {
      case 0: return 0;
      case 1: return 1;
      case 2: return 1;  // y and x both odd
      default: return -1;
    }
  }
  const u64 target = M % static_cast<u64>(q);
  for (int m = 0; m < q; ++m)
    if (static_cast<u64>(m) * m % q == target) return m;
  return -1;
}

}  // namespace

int residue_m(const Discriminant& field, u64 M) {
  if (M == 0) throw std::invalid_argument("residue_m: M must be >= 1");
  int m = residue_class(field, M);
  if (m < 0 || !b_indicator(field, M))
    throw std::domain_error("residue_m: " + std::to_string(M) + " is not a norm for q = " + std::to_string(field.q()));
  return m;
}

std::vector<AlgebraicInt> restricted_elements(const Discriminant& field, const Factorization& f) {
  if (!b_indicator(field, f)) return {};
  const u64 M = evaluate(f);
  const int m = residue_class(field, M);
  if (m < 0) throw std::logic_error("norm without a residue class");
  const i64 q = field.q();
  std::vector<AlgebraicInt> out;
  for (const auto& a : norm_elements(field, f))
    if (mod(twice_real(field, a) - 2 * m, q) == 0) out.push_back(a);
  return out;
}

u64 r_star_closed_form(const Discriminant& field, u64 M) {
  u64 r = r_count(field, M);
  if (r == 0) return 0;
  return gcd(static_cast<i64>(M % static_cast<u64>(field.q())), field.q()) > 1 ? r : r / 2;
}

u64 r_star(const Discriminant& field, const Factorization& f) {
  u64 direct = restricted_elements(field, f).size();
  u64 M = evaluate(f);
  u64 closed = r_star_closed_form(field, M);
  if (direct != closed)
    throw std::logic_error("r_star mismatch at M = " + std::to_string(M) + ": direct " + std::to_string(direct) +
                           " vs closed form " + std::to_string(closed));
  return direct;
}

u64 r_star(const Discriminant& field, u64 M) {
  if (M == 0) throw std::invalid_argument("r_star: M must be >= 1");
  return r_star(field, factorize(M));
}

std::vector<double> v_k_range(const Discriminant& field, const Factorization& f, int kmax) {
  std::vector<double> out(static_cast<std::size_t>(std::max(kmax, 0)), 0.0);
  auto elems = restricted_elements(field, f);
  if (elems.empty()) return out;
  std::vector<double> theta;
  theta.reserve(elems.size());
  for (const auto& a : elems) theta.push_back(element_angle(field, a));
  const double count = static_cast<double>(elems.size());
  for (int k = 1; k <= kmax; ++k) {
    double re = 0, im = 0;
    for (double t : theta) {
      re += std::cos(k * t);
      im += std::sin(k * t);
    }
    out[k - 1] = std::hypot(re, im) / count;
  }
  return out;
}

double v_k(const Discriminant& field, const Factorization& f, i64 k) {
  if (k == 0) return b_indicator(field, f) ? 1.0 : 0.0;
  if (k < 0) k = -k;
  auto elems = restricted_elements(field, f);
  if (elems.empty()) return 0.0;
  double re = 0, im = 0;
  for (const auto& a : elems) {
    double t = element_angle(field, a);
    re += std::cos(static_cast<double>(k) * t);
    im += std::sin(static_cast<double>(k) * t);
  }
  return std::hypot(re, im) / static_cast<double>(elems.size());
}

double v_k(const Discriminant& field, u64 M, i64 k) {
  if (M == 0) throw std::invalid_argument("v_k: M must be >= 1");
  return v_k(field, factorize(M), k);
}

}  // namespace hcircle
