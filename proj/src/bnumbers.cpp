#include "hcircle/bnumbers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hcircle/parallel.hpp"

namespace hcircle {

Classification classify(const Discriminant& field, u64 n) {
  if (n == 0) throw std::invalid_argument("classify: n must be positive");
  if (n == 1) return {PrimeClass::D1, true};
  bool all_split = true, all_inert = true;
  for (const auto& pp : factorize(n)) {
    const int c = chi(field, static_cast<i64>(pp.prime));
    all_split = all_split && c == 1;
    all_inert = all_inert && c == -1;
  }
  if (all_split) return {PrimeClass::D1, false};
  if (all_inert) return {PrimeClass::Dminus1, false};
  return {PrimeClass::Neither, false};
}

namespace {

// chi on primes not dividing q depends only on the residue mod the period.
struct ChiTable {
  int period;
  std::vector<int> values;
  explicit ChiTable(const Discriminant& field) : period(field.q() == 4 ? 4 : field.q()) {
    values.resize(static_cast<std::size_t>(period));
    for (int r = 0; r < period; ++r) values[static_cast<std::size_t>(r)] = chi(field, r == 0 ? period : r);
  }
  int operator()(u64 n) const { return values[n % static_cast<u64>(period)]; }
};

constexpr u64 kSegment = u64{1} << 16;

void sieve_into(const ChiTable& chi_of, const std::vector<std::uint32_t>& primes, u64 lo, u64 hi,
                std::uint8_t* out) {
  const std::size_t len = static_cast<std::size_t>(hi - lo);
  std::vector<u64> rest(len);
  for (std::size_t i = 0; i < len; ++i) {
    rest[i] = lo + i;
    out[i] = 1;
  }
  for (std::uint32_t p32 : primes) {
    const u64 p = p32;
    if (p * p >= hi) break;
    const bool inert = chi_of(p) == -1;
    for (u64 m = (lo + p - 1) / p * p; m < hi; m += p) {
      const std::size_t i = static_cast<std::size_t>(m - lo);
      int e = 0;
      while (rest[i] % p == 0) {
        rest[i] /= p;
        ++e;
      }
      if (inert && (e & 1)) out[i] = 0;
    }
  }
  // What is left above 1 is a single prime exceeding sqrt(hi).
  for (std::size_t i = 0; i < len; ++i)
    if (rest[i] > 1 && chi_of(rest[i]) == -1) out[i] = 0;
}

}  // namespace

std::vector<std::uint8_t> b_sieve(const Discriminant& field, u64 lo, u64 hi) {
  if (lo < 1) throw std::invalid_argument("b_sieve: lo must be at least 1");
  if (hi <= lo) return {};
  const ChiTable table(field);
  const auto primes = primes_up_to(isqrt(hi) + 1);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(hi - lo));
  for (u64 s = lo; s < hi; s += kSegment)
    sieve_into(table, primes, s, std::min(hi, s + kSegment), out.data() + (s - lo));
  return out;
}

u64 shifted_count(const Discriminant& field, double x, i64 h, unsigned threads) {
  if (x < 1) return 0;
  const u64 X = static_cast<u64>(std::floor(x));
  const ChiTable table(field);
  const u64 top = X + static_cast<u64>(std::max<i64>(h, 0)) + 1;
  const auto primes = primes_up_to(isqrt(top) + 1);
  const std::size_t blocks = static_cast<std::size_t>((X + kSegment - 1) / kSegment);
  std::vector<u64> partial(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const u64 lo = 1 + b * kSegment;
    const u64 hi = std::min(X + 1, lo + kSegment);  // n in [lo, hi)
    // window covering both n and n + h, clipped to positive integers
    const i64 wlo = std::max<i64>(1, static_cast<i64>(lo) + std::min<i64>(h, 0));
    const i64 whi = static_cast<i64>(hi) + std::max<i64>(h, 0);
    if (whi <= wlo) return;
    std::vector<std::uint8_t> w(static_cast<std::size_t>(whi - wlo));
    sieve_into(table, primes, static_cast<u64>(wlo), static_cast<u64>(whi), w.data());
    auto b_at = [&](i64 m) -> int {
      if (m < 1) return 0;
      return w[static_cast<std::size_t>(m - wlo)];
    };
    u64 count = 0;
    for (u64 n = lo; n < hi; ++n) count += static_cast<u64>(b_at(static_cast<i64>(n)) & b_at(static_cast<i64>(n) + h));
    partial[b] = count;
  });
  return std::accumulate(partial.begin(), partial.end(), u64{0});
}

namespace {

bool is_quadratic_residue(i64 a, int q) {
  const i64 r = mod(a, q);
  for (i64 x = 1; x < q; ++x)
    if ((x * x) % q == r) return true;
  return false;
}

}  // namespace

ProgressionSpec build_progression(const Discriminant& field, i64 h) {
  if (h == 0) throw std::invalid_argument("build_progression: h must be nonzero");
  ProgressionSpec s;
  s.q = field.q();
  s.h_original = h;
  const i64 p = static_cast<i64>(field.ramified_prime());
  i64 hp = h;
  while (hp % p == 0) {
    hp /= p;
    ++s.stripped_power;
  }
  const i64 q = field.q();
  if (!field.is_even()) {
    if (!is_quadratic_residue(hp, field.q())) {
      hp = -hp;
      s.negated = s.swapped = true;
    }
    const i64 a = hp < 0 ? -hp : hp;
    const i64 base = q * q * a;  // n = q (mod q^2 |h|)
    if (a % 2 == 1) {
      s.sigma = 1;
      s.n1 = static_cast<u64>(8 * base);
      // CRT with n = 4 (mod 8); base is odd so one of 8 lifts works.
      i64 n = mod(q, base);
      if (n == 0) n = base;
      while (mod(n, 8) != 4) n += base;
      s.n0 = static_cast<u64>(n);
    } else {
      s.sigma = 0;
      s.n1 = static_cast<u64>(base);
      i64 n = mod(q, base);
      if (n == 0) n = base;
      s.n0 = static_cast<u64>(n);
    }
  } else {
    const i64 r = mod(hp, q == 4 ? 4 : 8);
    const bool ok = (q == 4) ? r == 1 : (r == 1 || r == 3);
    if (!ok) {
      hp = -hp;
      s.negated = s.swapped = true;
    }
    const i64 a = hp < 0 ? -hp : hp;
    s.sigma = 1;
    s.n0 = static_cast<u64>(4 * q);
    s.n1 = static_cast<u64>(4 * q * q * a);
  }
  s.h_normalized = hp;
  return s;
}

ProgressionTerm progression_term(const ProgressionSpec& spec, u64 j) {
  ProgressionTerm t;
  t.n = spec.n1 * j + spec.n0;
  const u64 d = static_cast<u64>(spec.q) * (spec.sigma ? 4 : 1);
  if (t.n % d != 0) throw std::logic_error("progression_term: n not divisible by 4^sigma q");
  t.first = t.n / d;
  const i64 second = static_cast<i64>(t.n) + spec.h_normalized;
  if (second <= 0) throw std::logic_error("progression_term: n + h is not positive");
  t.second = static_cast<u64>(second);
  return t;
}

namespace {

struct TermShape {
  bool ramified = false;
  bool small_inert = false;  // an inert prime below z
  int large_inert = 0;       // inert primes >= z with multiplicity
};

void add_shape(const Discriminant& field, u64 v, double z, TermShape& s) {
  for (const auto& pp : factorize(v)) {
    const int c = chi(field, static_cast<i64>(pp.prime));
    if (c == 0) {
      s.ramified = true;
    } else if (c == -1) {
      if (static_cast<double>(pp.prime) < z)
        s.small_inert = true;
      else
        s.large_inert += pp.exponent;
    }
  }
}

TermShape shape_of(const Discriminant& field, const ProgressionTerm& t, double z) {
  TermShape s;
  add_shape(field, t.first, z, s);
  add_shape(field, t.second, z, s);
  return s;
}

u64 term_count(double y) { return y < 1 ? 0 : static_cast<u64>(std::floor(y)); }

}  // namespace

u64 b_star_count(const Discriminant& field, const ProgressionSpec& spec, double y) {
  u64 count = 0;
  const u64 J = term_count(y);
  for (u64 j = 1; j <= J; ++j) {
    const ProgressionTerm t = progression_term(spec, j);
    if (classify(field, t.first).cls == PrimeClass::D1 && classify(field, t.second).cls == PrimeClass::D1) ++count;
  }
  return count;
}

u64 sifted_count(const Discriminant& field, const ProgressionSpec& spec, double y, double z) {
  if (!(z > 2)) throw std::invalid_argument("sifted_count: z must exceed 2");
  u64 count = 0;
  const u64 J = term_count(y);
  for (u64 j = 1; j <= J; ++j)
    if (!shape_of(field, progression_term(spec, j), z).small_inert) ++count;
  return count;
}

SiftedDecomposition sifted_decomposition(const Discriminant& field, const ProgressionSpec& spec, double y,
                                         double s) {
  SiftedDecomposition d;
  d.y = y;
  d.z = std::pow(y, 1.0 / s);
  if (!(d.z > 2)) throw std::invalid_argument("sifted_decomposition: y^(1/s) must exceed 2");
  const u64 J = term_count(y);
  for (u64 j = 1; j <= J; ++j) {
    const TermShape sh = shape_of(field, progression_term(spec, j), d.z);
    if (sh.small_inert) continue;
    ++d.sifted;
    if (sh.ramified)
      ++d.other;
    else if (sh.large_inert == 0)
      ++d.b_star;
    else if (sh.large_inert == 2)
      ++d.d12;
    else if (sh.large_inert == 4)
      ++d.d14;
    else
      ++d.other;
  }
  return d;
}

}  // namespace hcircle
