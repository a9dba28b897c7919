#include "doctest.h"
#include "hcircle/halfplane.hpp"

#include <cmath>
#include <random>

using namespace hcircle;

namespace {

// Random element of SL(2,Z) with entries of size about `bound`.
UnimodularMatrix random_matrix(std::mt19937_64& rng, i64 bound) {
  std::uniform_int_distribution<i64> dist(-bound, bound);
  for (;;) {
    const i64 c = dist(rng), d = dist(rng);
    if (c == 0 && d == 0) continue;
    i64 x = 0, y = 0;
    const i64 g = ext_gcd(d, c, x, y);
    if (g != 1 && g != -1) continue;
    // a d - b c = 1 with a = x g, b = -y g, shifted along the row
    const i64 t = dist(rng) % 2;
    return {x * g + t * c, -y * g + t * d, c, d};
  }
}

// 2R straight from the definition with doubles: q/2 * cosh(rho).
double two_n_float(const Discriminant& f, const UnimodularMatrix& g) {
  const PointH z = heegner_point(f);
  return f.q() * cosh_distance(z, apply_mobius(g, z));
}

}  // namespace

TEST_CASE("cosh_distance examples") {
  const PointH i{0, 1}, two_i{0, 2}, one_i{1, 1};
  CHECK(cosh_distance(i, i) == 1.0);
  CHECK(cosh_distance(i, two_i) == doctest::Approx(1.25));
  CHECK(cosh_distance(i, one_i) == doctest::Approx(1.5));
  CHECK(cosh_distance(two_i, i) == cosh_distance(i, two_i));
}

TEST_CASE("unimodular matrices") {
  CHECK_THROWS_AS(UnimodularMatrix(1, 1, 1, 1), std::invalid_argument);
  const UnimodularMatrix neg(-1, -2, -1, -3);
  CHECK(neg.c() == 1);
  CHECK(neg.a() == 1);
  CHECK(UnimodularMatrix(-1, 0, 0, -1) == UnimodularMatrix::identity());
}

TEST_CASE("arithmetic radius examples") {
  for (int q : kAllQ) CHECK(arithmetic_radius(Discriminant(q), UnimodularMatrix::identity()).two_n == q);
  const UnimodularMatrix T(1, 1, 0, 1);
  CHECK(arithmetic_radius(Discriminant(3), T).two_n == 5);
  CHECK(arithmetic_radius(Discriminant(4), T).two_n == 6);
}

TEST_CASE("mobius action examples") {
  const PointH i{0, 1};
  const PointH a = apply_mobius(UnimodularMatrix::identity(), {0.3, 0.7});
  CHECK(a.re == doctest::Approx(0.3));
  CHECK(a.im == doctest::Approx(0.7));
  const PointH s = apply_mobius(UnimodularMatrix(0, -1, 1, 0), i);
  CHECK(s.re == doctest::Approx(0.0));
  CHECK(s.im == doctest::Approx(1.0));
  const PointH t = apply_mobius(UnimodularMatrix(1, 1, 0, 1), i);
  CHECK(t.re == doctest::Approx(1.0));
  CHECK(t.im == doctest::Approx(1.0));
}

TEST_CASE("disc map examples") {
  for (int q : kAllQ) {
    Discriminant f(q);
    CHECK(std::abs(disc_map(f, heegner_point(f))) <= 1e-15);
  }
  const auto w = disc_map(Discriminant(4), {0, 2});
  CHECK(w.real() == doctest::Approx(0.0));
  CHECK(w.imag() == doctest::Approx(1.0 / 3.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-3, 3), im(0.1, 4);
  for (int q : kAllQ) {
    Discriminant f(q);
    for (int i = 0; i < 200; ++i) {
      const PointH p{re(rng), im(rng)};
      const double c = cosh_distance(heegner_point(f), p);
      CHECK(std::norm(disc_map(f, p)) == doctest::Approx((c - 1) / (c + 1)).epsilon(1e-10));
      CHECK(std::abs(disc_map(f, p)) < 1.0);
    }
  }
}

TEST_CASE("integer coordinates examples") {
  for (int q : kAllQ) {
    const auto c = integer_coords(Discriminant(q), UnimodularMatrix::identity());
    CHECK(c.h == 0);
    CHECK(c.Y == 0);
  }
  const auto c = integer_coords(Discriminant(3), UnimodularMatrix(1, 1, 0, 1));
  CHECK(c.h == 2);
  CHECK(c.Y == 2);
}

TEST_CASE("split coordinates examples") {
  Discriminant f(3);
  const SplitCoords v = split_coordinates(f, UnimodularMatrix(1, 1, 0, 1));
  CHECK(v == SplitCoords{2, 0, 0, 1});
  CHECK(norm(f, {v.u, v.r}) == 4);
  CHECK(norm(f, {v.t, v.s}) == 1);
  for (int q : kAllQ) {
    Discriminant g(q);
    const SplitCoords id = split_coordinates(g, UnimodularMatrix::identity());
    CHECK(id == SplitCoords{2, -g.two_mu(), 0, 0});
    CHECK(norm(g, {id.u, id.r}) == static_cast<u64>(q));
  }
}

TEST_CASE("transfer matrix entries for odd q") {
  for (int q : {3, 7, 11, 19, 43, 67, 163}) {
    const auto T = transfer_matrix(Discriminant(q));
    const std::array<std::array<i64, 4>, 4> want{{
        {(q - 1) / 2, -1, (q + 1) / 2, 1},
        {(q + 1) / 4, (q + 1) / 2, -(q + 1) / 4, (q - 1) / 2},
        {-1, -2, 1, 2},
        {(q + 1) / 2, 1, -(q + 1) / 2, -1},
    }};
    CHECK(T == want);
  }
}

TEST_CASE("random matrix identities") {
  std::mt19937_64 rng(11);
  for (int q : kAllQ) {
    Discriminant f(q);
    for (int i = 0; i < 3000; ++i) {
      const UnimodularMatrix g = random_matrix(rng, 1000);
      const i64 two_n = arithmetic_radius(f, g).two_n;
      REQUIRE(mod(two_n - q, 2) == 0);
      REQUIRE(std::abs(two_n_float(f, g) - two_n) <= 1e-6 * two_n);

      const IntegerCoords c = integer_coords(f, g);
      REQUIRE(static_cast<i128>(q) * c.h * c.h + static_cast<i128>(c.Y) * c.Y ==
              static_cast<i128>(two_n) * two_n - static_cast<i128>(q) * q);
      REQUIRE(mod(c.Y - two_n, q) == 0);

      const SplitCoords v = split_coordinates(f, g);
      REQUIRE(norm(f, {v.u, v.r}) == static_cast<u64>((two_n + q) / 2));
      REQUIRE(norm(f, {v.t, v.s}) == static_cast<u64>((two_n - q) / 2));
      REQUIRE(coords_from_split(f, v) == c);
      REQUIRE(congruence_full(f, v));
      REQUIRE(congruence_reduced(f, v));

      const auto e = scaled_entries(f, v);
      REQUIRE(UnimodularMatrix(e[0] / q, e[1] / q, e[2] / q, e[3] / q) == g);

      const double np = (two_n + q) / 2.0;
      const auto w = disc_map(f, apply_mobius(g, heegner_point(f)));
      const std::complex<double> xy(f.lambda() * static_cast<double>(c.h), c.Y / 2.0);
      REQUIRE(std::abs(np * w - xy) <= 1e-6 * np);
    }
  }
}

TEST_CASE("full and reduced congruences agree on random quadruples") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> dist(-500, 500);
  for (int q : kAllQ) {
    Discriminant f(q);
    for (int i = 0; i < 10000; ++i) {
      const SplitCoords v{dist(rng), dist(rng), dist(rng), dist(rng)};
      REQUIRE(congruence_full(f, v) == congruence_reduced(f, v));
    }
  }
}
