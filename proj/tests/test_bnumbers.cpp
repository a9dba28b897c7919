#include "doctest.h"
#include "hcircle/bnumbers.hpp"

#include <cmath>

using namespace hcircle;

namespace {

// b_K(n) by searching for (u, r) with u^2 + two_mu u r + N r^2 = n.
bool is_norm_oracle(const Discriminant& f, i64 n) {
  if (n < 1) return false;
  const i64 R = 2 * static_cast<i64>(std::sqrt(static_cast<double>(n))) + 2;
  for (i64 r = 0; r <= R; ++r)
    for (i64 u = -R; u <= R; ++u)
      if (u * u + f.two_mu() * u * r + f.norm_z() * r * r == n) return true;
  return false;
}

u64 shifted_oracle(const Discriminant& f, i64 x, i64 h) {
  u64 c = 0;
  for (i64 n = 1; n <= x; ++n)
    if (is_norm_oracle(f, n) && is_norm_oracle(f, n + h)) ++c;
  return c;
}

}  // namespace

TEST_CASE("classify examples") {
  Discriminant f(4);
  CHECK(classify(f, 65).cls == PrimeClass::D1);
  CHECK(classify(f, 21).cls == PrimeClass::Dminus1);
  CHECK(classify(f, 15).cls == PrimeClass::Neither);
  const Classification one = classify(f, 1);
  CHECK(one.cls == PrimeClass::D1);
  CHECK(one.both);
  CHECK_FALSE(classify(f, 65).both);
  CHECK(classify(f, 2).cls == PrimeClass::Neither);  // ramified
}

TEST_CASE("classify respects products") {
  for (int q : {3, 4, 7, 11}) {
    Discriminant f(q);
    std::vector<u64> d1;
    for (u64 n = 1; n <= 300; ++n)
      if (classify(f, n).cls == PrimeClass::D1) d1.push_back(n);
    for (u64 a : d1)
      for (u64 b : d1) CHECK(classify(f, a * b).cls == PrimeClass::D1);
  }
}

TEST_CASE("b_K is a D1 part times even inert powers times ramified powers") {
  for (int q : kAllQ) {
    Discriminant f(q);
    for (u64 n = 1; n <= 10000; ++n) {
      bool shape = true;
      for (const auto& pp : factorize(n))
        if (chi(f, static_cast<i64>(pp.prime)) == -1 && pp.exponent % 2 == 1) shape = false;
      REQUIRE(b_indicator(f, n) == shape);
    }
  }
}

TEST_CASE("b_sieve agrees with the norm search") {
  for (int q : kAllQ) {
    Discriminant f(q);
    const auto b = b_sieve(f, 1, 3001);
    for (i64 n = 1; n <= 3000; ++n) REQUIRE((b[static_cast<std::size_t>(n - 1)] == 1) == is_norm_oracle(f, n));
    const u64 lo = 999000, hi = 1001000;
    const auto seg = b_sieve(f, lo, hi);
    for (u64 n = lo; n < hi; ++n) REQUIRE((seg[n - lo] == 1) == b_indicator(f, n));
  }
}

TEST_CASE("shifted_count examples") {
  CHECK(shifted_count(Discriminant(4), 20, 1) == 6);
  CHECK(shifted_count(Discriminant(3), 10, 1) == 1);
  CHECK(shifted_oracle(Discriminant(3), 10, 1) == 1);
  for (int q : kAllQ) {
    Discriminant f(q);
    u64 bernays = 0;
    for (const auto v : b_sieve(f, 1, 5001)) bernays += v;
    CHECK(shifted_count(f, 5000, 0) == bernays);
  }
}

TEST_CASE("shifted_count agrees with brute force") {
  for (int q : {3, 4, 7, 8, 11}) {
    Discriminant f(q);
    for (i64 h : {1, -1, 2, -2, 3, 7, -12}) {
      REQUIRE(shifted_count(f, 700, h, 1) == shifted_oracle(f, 700, h));
      REQUIRE(shifted_count(f, 200000, h, 1) == shifted_count(f, 200000, h, 4));
    }
  }
}

TEST_CASE("progression examples") {
  const ProgressionSpec a = build_progression(Discriminant(3), 1);
  CHECK(a.sigma == 1);
  CHECK(a.n0 == 12);
  CHECK(a.n1 == 72);
  CHECK_FALSE(a.negated);
  const ProgressionSpec b = build_progression(Discriminant(4), 5);
  CHECK(b.n0 == 16);
  CHECK(b.n1 == 320);
  CHECK_FALSE(b.negated);
  const ProgressionSpec c = build_progression(Discriminant(3), -1);
  CHECK(c.negated);
  CHECK(c.swapped);
  CHECK(c.h_normalized == 1);
  const ProgressionSpec d = build_progression(Discriminant(7), 14);
  CHECK(d.stripped_power == 1);
  CHECK(d.h_normalized == 2);
  CHECK(d.sigma == 0);
  CHECK_THROWS_AS(build_progression(Discriminant(3), 0), std::invalid_argument);
}

TEST_CASE("progression invariants and the splitting identity") {
  for (int q : kAllQ) {
    Discriminant f(q);
    for (i64 h : {1, -1, 2, -2, 3, 5, 6, -10, 12}) {
      const ProgressionSpec s = build_progression(f, h);
      const i64 hn = s.h_normalized;
      const i64 a = hn < 0 ? -hn : hn;
      if (q % 2 == 1) {
        CHECK(gcd(hn, q) == 1);
        bool qr = false;
        for (i64 x = 1; x < q; ++x) qr = qr || mod(x * x - hn, q) == 0;
        CHECK(qr);
        CHECK(mod(static_cast<i64>(s.n0) - q, q * q * a) == 0);
        if (a % 2 == 1) CHECK(s.n0 % 8 == 4);
      } else {
        CHECK(a % 2 == 1);
        CHECK(mod(static_cast<i64>(s.n0) - 4 * q, 4 * q * q * a) == 0);
      }
      for (u64 j = 1; j <= 100; ++j) {
        const ProgressionTerm t = progression_term(s, j);
        CHECK(gcd(static_cast<i64>(t.first), static_cast<i64>(t.second)) == 1);
        const bool lhs = b_indicator(f, t.n) && b_indicator(f, t.second);
        CHECK(lhs == b_indicator(f, t.first * t.second));
      }
    }
  }
}

TEST_CASE("b_star_count properties") {
  Discriminant f(3);
  const ProgressionSpec s = build_progression(f, 1);
  CHECK(b_star_count(f, s, 0.5) == 0);
  u64 prev = 0;
  for (double y : {1.0, 10.0, 50.0, 100.0, 400.0}) {
    const u64 v = b_star_count(f, s, y);
    CHECK(v >= prev);
    prev = v;
  }
  // independent count of j <= 100 with every prime of both factors split
  u64 expect = 0;
  for (u64 j = 1; j <= 100; ++j) {
    const u64 n = 72 * j + 12;
    bool ok = true;
    for (u64 v : {n / 12, n + 1})
      for (const auto& pp : factorize(v)) ok = ok && pp.prime % 3 == 1;
    if (ok) ++expect;
  }
  CHECK(b_star_count(f, s, 100) == expect);
  // B(x, h) >= B*((x - n0)/n1, h)
  const double x = 200000;
  CHECK(shifted_count(f, x, 1) >= b_star_count(f, s, (x - static_cast<double>(s.n0)) / static_cast<double>(s.n1)));
}

TEST_CASE("sifted_count properties") {
  Discriminant f(3);
  const ProgressionSpec s = build_progression(f, 1);
  // 2 is the only inert prime below 2.5 for q = 3, and no term is even
  CHECK(sifted_count(f, s, 300, 2.5) == 300);
  CHECK_THROWS_AS(sifted_count(f, s, 10, 2.0), std::invalid_argument);
  u64 prev = ~u64{0};
  for (double z : {3.0, 6.0, 12.0, 30.0, 100.0}) {
    const u64 v = sifted_count(f, s, 500, z);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("sifted decomposition") {
  Discriminant f(3);
  const ProgressionSpec s = build_progression(f, 1);
  const SiftedDecomposition d = sifted_decomposition(f, s, 2000, 2.2);
  CHECK(d.sifted == sifted_count(f, s, 2000, d.z));
  CHECK(d.b_star == b_star_count(f, s, 2000));
  CHECK(d.other == 0);
  CHECK(d.holds());
}
