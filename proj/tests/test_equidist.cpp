#include "doctest.h"
#include "hcircle/equidist.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hcircle;

namespace {

constexpr double kPi = std::numbers::pi;

// #{gamma in PSL(2,Z): cosh rho(z_q, gamma z_q) <= x} by looping over all
// entries in a box. cosh rho(i, gamma i) = (a^2+b^2+c^2+d^2)/2 and the
// triangle inequality through i bound the box.
u64 hyperbolic_count_oracle(int q, double x) {
  Discriminant f(q);
  const PointH z = heegner_point(f);
  const double delta = std::acosh(cosh_distance({0, 1}, z));
  const i64 B = static_cast<i64>(std::ceil(std::sqrt(2 * std::cosh(std::acosh(x) + 2 * delta)))) + 1;
  u64 n = 0;
  for (i64 c = 0; c <= B; ++c)
    for (i64 d = -B; d <= B; ++d) {
      if (c == 0 && d <= 0) continue;
      for (i64 a = -B; a <= B; ++a)
        for (i64 b = -B; b <= B; ++b) {
          if (a * d - b * c != 1) continue;
          const PointH w{(a * z.re + b) * (c * z.re + d) + a * c * z.im * z.im, 0};
          const double den = (c * z.re + d) * (c * z.re + d) + c * c * z.im * z.im;
          const PointH gz{w.re / den, z.im / den};
          if (cosh_distance(z, gz) <= x + 1e-9) ++n;
        }
    }
  return n;
}

}  // namespace

TEST_CASE("discrepancy of equally spaced angles") {
  for (int m = 1; m <= 64; ++m) {
    std::vector<double> a;
    for (int j = 0; j < m; ++j) a.push_back(2 * kPi * j / m);
    CHECK(std::abs(circle_discrepancy(a) - 1.0 / m) <= 1e-14);
    CHECK(std::abs(circle_discrepancy_brute(a) - 1.0 / m) <= 1e-14);
  }
  CHECK(circle_discrepancy({1.234}) == 1.0);
  CHECK(circle_discrepancy_brute({1.234}) == 1.0);
  CHECK_THROWS_AS(circle_discrepancy({}), std::invalid_argument);
}

TEST_CASE("discrepancy example from the q = 3 circle") {
  const auto a = angles(Radius(Discriminant(3), 5));
  CHECK(circle_discrepancy(a) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("fast and brute-force discrepancy agree") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 40;
    std::vector<double> a;
    for (int i = 0; i < n; ++i) a.push_back(u(rng));
    // force ties now and then
    if (trial % 3 == 0 && n > 2) a[1] = a[0];
    CHECK(std::abs(circle_discrepancy(a) - circle_discrepancy_brute(a)) <= 1e-12);
  }
  // clustered points: all in a short arc
  std::vector<double> cl{0.1, 0.11, 0.12, 0.13};
  CHECK(circle_discrepancy(cl) == doctest::Approx(1.0 - 0.03 / (2 * kPi)).epsilon(1e-12));
}

TEST_CASE("Erdos-Turan bound examples") {
  Radius r(Discriminant(3), 5);
  CHECK(et_bound(r, 1) == doctest::Approx(0.5));
  CHECK(et_bound(r, 2) == doctest::Approx(1.0 / 3));
  CHECK(et_bound(r, 3) == doctest::Approx(1.25));
  CHECK_THROWS(et_bound(r, 0));
  CHECK(default_et_terms(5) == 2);
}

TEST_CASE("discrepancy never exceeds the Erdos-Turan bound") {
  for (int q : kAllQ) {
    Discriminant f(q);
    for (const auto& r : radii_up_to(f, 500)) {
      const DiscrepancyReport rep = discrepancy_report(r);
      REQUIRE(rep.discrepancy <= rep.et_bound);
      REQUIRE(rep.discrepancy >= 0.0);
      REQUIRE(rep.discrepancy <= 1.0);
      REQUIRE(rep.point_count == lattice_points(r).size());
    }
  }
}

TEST_CASE("matrix-side and point-side discrepancies coincide") {
  for (int q : kAllQ) {
    Discriminant f(q);
    for (const auto& r : radii_up_to(f, 120)) {
      const double pts = circle_discrepancy(angles(r));
      const double mats = circle_discrepancy(matrix_angles(f, brute_force_matrices(r)));
      REQUIRE(std::abs(pts - mats) <= 1e-9);
    }
  }
}

TEST_CASE("survey on a small range") {
  const SurveyResult s = survey(Discriminant(4), 1000, 2);
  CHECK(s.summary.count == s.rows.size());
  CHECK(s.rows.size() == radii_up_to(Discriminant(4), 1000).size());
  for (std::size_t i = 1; i < s.rows.size(); ++i) CHECK(s.rows[i - 1].two_n < s.rows[i].two_n);
  for (const auto& row : s.rows) {
    CHECK(row.in_B_flat == ((row.two_n / 2) % 2 == 1));
    CHECK(row.gamma_count == row.point_count * 2);
  }
  const SurveyResult one = survey(Discriminant(4), 1000, 1);
  REQUIRE(one.rows.size() == s.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) CHECK(one.rows[i].discrepancy == s.rows[i].discrepancy);
  const SurveyResult tiny = survey(Discriminant(3), 3.5, 1);
  CHECK(tiny.summary.degenerate);
  CHECK(discrepancy_exponent() == doctest::Approx(0.6514961294723187));
}

TEST_CASE("sharp radii for odd q: even orders factor") {
  for (int q : {3, 7, 11, 19, 43, 67, 163}) {
    Discriminant f(q);
    const auto radii = sharp_radii(f, 20.0 * q * q);
    REQUIRE(!radii.empty());
    for (const auto& r : radii) {
      REQUIRE(r.two_n() % q == 0);
      for (int k = 2; k <= 10; k += 2) CHECK(sharp_factorization_check(r, k).holds);
    }
  }
  CHECK_THROWS_AS(sharp_factorization_check(Radius(Discriminant(11), 29), 1), std::invalid_argument);
}

TEST_CASE("sharp radii for odd q: odd orders vanish on the left") {
  // With q | 2n every element of norm M_n is counted and the set is closed
  // under negation, so odd Weyl sums cancel. The right side need not vanish.
  Discriminant f(7);
  Radius r(f, 21);
  REQUIRE(r.is_valid());
  const SharpCheck c = sharp_factorization_check(r, 1);
  CHECK(c.lhs <= 1e-12);
  CHECK(c.rhs == doctest::Approx(1.0 / std::sqrt(8.0)));
  CHECK_FALSE(c.holds);
}

TEST_CASE("sharp check for even q reports the matching power") {
  for (int q : {4, 8}) {
    Discriminant f(q);
    for (const auto& r : sharp_radii(f, 300)) {
      const SharpCheck c = sharp_factorization_check(r, 2);
      if (c.holds) CHECK((c.matching_power == 1 || c.matching_power == 2));
      CHECK((c.rhs_power[0].has_value() || c.rhs_power[1].has_value()));
    }
  }
}

TEST_CASE("circle problem: centre term") {
  const CircleProblemResult c = circle_problem_sum(Discriminant(3), 1.0);
  CHECK(c.sum == 3);
  CHECK(c.centre_formula == 3);
  REQUIRE(c.direct_count.has_value());
  CHECK(*c.direct_count == 3);
  for (int q : kAllQ) {
    const CircleProblemResult d = circle_problem_sum(Discriminant(q), 1.0);
    CHECK(d.centre_formula == d.centre_stabilizer);
  }
}

TEST_CASE("circle problem: sum equals a box-search count") {
  for (int q : {3, 4, 7}) {
    for (double x : {1.5, 4.0, 11.0, 25.0}) {
      const CircleProblemResult c = circle_problem_sum(Discriminant(q), x);
      REQUIRE(c.direct_count.has_value());
      CHECK(c.sum == *c.direct_count);
      CHECK(c.sum == hyperbolic_count_oracle(q, x));
    }
  }
  const CircleProblemResult big = circle_problem_sum(Discriminant(3), 2000.0);
  CHECK_FALSE(big.direct_count.has_value());
}
