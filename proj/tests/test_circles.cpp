#include "doctest.h"
#include "hcircle/circles.hpp"

#include <cmath>
#include <numbers>
#include <set>

using namespace hcircle;

namespace {

// Number of (u, r) with u^2 + two_mu u r + N r^2 = M, by a box search.
u64 box_count(const Discriminant& f, i64 M) {
  u64 n = 0;
  const i64 R = 2 * static_cast<i64>(std::sqrt(static_cast<double>(M))) + 3;
  for (i64 r = -R; r <= R; ++r)
    for (i64 u = -R; u <= R; ++u)
      if (u * u + f.two_mu() * u * r + f.norm_z() * r * r == M) ++n;
  return n;
}

// Points of q h^2 + Y^2 = two_n^2 - q^2 with Y = two_n (mod q), by scanning Y.
std::set<CirclePoint> point_oracle(int q, i64 two_n) {
  std::set<CirclePoint> out;
  const i64 rhs = two_n * two_n - static_cast<i64>(q) * q;
  for (i64 Y = -two_n; Y <= two_n; ++Y) {
    if (mod(Y - two_n, q) != 0) continue;
    const i64 rest = rhs - Y * Y;
    if (rest < 0 || rest % q != 0) continue;
    const i64 h2 = rest / q;
    const i64 h = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(h2))));
    if (h * h != h2) continue;
    out.insert({h, Y});
    out.insert({-h, Y});
  }
  return out;
}

}  // namespace

TEST_CASE("radius constants") {
  Radius r(Discriminant(11), 29);
  CHECK(r.n_plus() == 20);
  CHECK(r.n_minus() == 9);
  CHECK(r.m_value() == 180);
  CHECK(r.c4() == 1);
  CHECK(Radius(Discriminant(11), 33).c4() == 2);
  CHECK(Radius(Discriminant(4), 8).c4() == 2);
  CHECK(Radius(Discriminant(4), 6).c4() == 1);
  CHECK_THROWS(Radius(Discriminant(3), 4));
  CHECK_THROWS(Radius(Discriminant(3), 1));
  CHECK(Radius(Discriminant(3), 3).is_centre());
  CHECK_FALSE(Radius(Discriminant(3), 3).is_valid());
}

TEST_CASE("radii_up_to examples") {
  const auto r3 = radii_up_to(Discriminant(3), 3);
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].two_n() == 5);
  const auto r4 = radii_up_to(Discriminant(4), 3);
  REQUIRE(r4.size() == 1);
  CHECK(r4[0].two_n() == 6);
}

TEST_CASE("radius membership agrees with the matrix oracle") {
  for (int q : kAllQ) {
    Discriminant f(q);
    std::set<i64> valid;
    for (const auto& r : radii_up_to(f, 100)) valid.insert(r.two_n());
    for (i64 two_n = q + 2; two_n <= 200; two_n += 2) {
      const bool nonempty = !brute_force_matrices(Radius(f, two_n)).empty();
      REQUIRE(nonempty == (valid.count(two_n) == 1));
    }
  }
}

TEST_CASE("enumerate_pairs examples") {
  CHECK(enumerate_pairs(Radius(Discriminant(11), 29)).size() == 6);
  CHECK(enumerate_pairs(Radius(Discriminant(11), 61)).size() == 9);
  CHECK(enumerate_pairs(Radius(Discriminant(3), 5)).size() == 9);
  CHECK_THROWS_AS(enumerate_pairs(Radius(Discriminant(3), 3)), std::invalid_argument);
}

TEST_CASE("pairs_to_matrices examples") {
  Discriminant f(3);
  Radius r(f, 5);
  const std::vector<SplitPair> one{{{0, 2}, {1, 0}}};
  const auto g = pairs_to_matrices(r, one);
  REQUIRE(g.size() == 1);
  CHECK(g[0] == UnimodularMatrix(1, 1, 0, 1));
  for (int q : kAllQ) {
    Discriminant h(q);
    const std::array<i64, 4> e = scaled_entries(h, {2, -h.two_mu(), 0, 0});
    CHECK(UnimodularMatrix(e[0] / q, e[1] / q, e[2] / q, e[3] / q) == UnimodularMatrix::identity());
  }
}

TEST_CASE("brute force examples") {
  const auto centre = brute_force_matrices(Radius(Discriminant(3), 3));
  CHECK(centre.size() == 3);
  CHECK(std::count(centre.begin(), centre.end(), UnimodularMatrix(1, -1, 1, 0)) == 1);
  CHECK(std::count(centre.begin(), centre.end(), UnimodularMatrix::identity()) == 1);
  CHECK(brute_force_matrices(Radius(Discriminant(4), 4)).size() == 2);
  CHECK(brute_force_matrices(Radius(Discriminant(7), 7)).size() == 1);
  CHECK(brute_force_matrices(Radius(Discriminant(3), 5)).size() == 9);
  CHECK(brute_force_matrices(Radius(Discriminant(4), 6)).size() == 8);
}

TEST_CASE("pairs and the brute-force oracle agree, counts follow the product formula") {
  for (int q : kAllQ) {
    Discriminant f(q);
    for (i64 two_n = q + 2; two_n <= 260; two_n += 2) {
      Radius r(f, two_n);
      const auto pairs = enumerate_pairs(r);
      const auto fast = pairs_to_matrices(r, pairs);
      const auto slow = brute_force_matrices(r);
      REQUIRE(fast == slow);
      const u64 predicted = static_cast<u64>(r.c4()) * box_count(f, static_cast<i64>(r.n_minus())) *
                            box_count(f, static_cast<i64>(r.n_plus()));
      REQUIRE(predicted % 4 == 0);
      REQUIRE(fast.size() == predicted / 4);
      for (const auto& p : pairs) REQUIRE(congruence_full(f, p.coords()));
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        // round trip back to the pair, up to the shared sign
        SplitCoords back = split_coordinates(f, pairs_to_matrices(r, {pairs[i]})[0]);
        const SplitCoords v = pairs[i].coords();
        if (back != v) back = {-back.r, -back.u, -back.s, -back.t};
        REQUIRE(back == v);
      }
    }
  }
}

TEST_CASE("lattice_points examples") {
  const auto p3 = lattice_points(Radius(Discriminant(3), 5));
  const std::vector<CirclePoint> want{{-2, 2}, {0, -4}, {2, 2}};
  CHECK(p3 == want);
  CHECK(lattice_points(Radius(Discriminant(11), 29)).size() == 6);
  CHECK_THROWS(lattice_points(Radius(Discriminant(3), 3)));
}

TEST_CASE("lattice points: matrix image, direct solve and oracle coincide") {
  for (int q : kAllQ) {
    Discriminant f(q);
    for (const auto& r : radii_up_to(f, 300)) {
      const auto pts = lattice_points(r);
      const auto oracle = point_oracle(q, r.two_n());
      REQUIRE(std::set<CirclePoint>(pts.begin(), pts.end()) == oracle);
      const auto pairs = enumerate_pairs(r);
      REQUIRE(points_from_pairs(r, pairs) == pts);
      // each point is hit by unit_count/2 matrices
      REQUIRE(pairs.size() == pts.size() * static_cast<std::size_t>(f.unit_count() / 2));
      REQUIRE(pts.size() == r_star(f, r.m_factors()));
      for (const auto& p : pts) REQUIRE(std::count(pts.begin(), pts.end(), CirclePoint{-p.h, p.Y}) == 1);
    }
  }
}

TEST_CASE("angles example and the Weyl-sum identity") {
  const auto a = angles(Radius(Discriminant(3), 5));
  REQUIRE(a.size() == 3);
  CHECK(a[0] == doctest::Approx(std::numbers::pi / 6));
  CHECK(a[1] == doctest::Approx(5 * std::numbers::pi / 6));
  CHECK(a[2] == doctest::Approx(3 * std::numbers::pi / 2));
  for (int q : kAllQ) {
    Discriminant f(q);
    for (const auto& r : radii_up_to(f, 150)) {
      const auto pts = lattice_points(r);
      const Factorization m = r.m_factors();
      for (int k = 1; k <= 20; ++k) {
        std::complex<double> s = 0;
        for (const auto& p : pts) {
          // theta(y + ix) for the element y + ix
          const double th = std::atan2(f.lambda() * static_cast<double>(p.h), p.Y / 2.0);
          s += std::polar(1.0, k * th);
        }
        REQUIRE(std::abs(std::abs(s) - static_cast<double>(r_star(f, m)) * v_k(f, m, k)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("matrix angles repeat the point angles") {
  for (int q : {3, 4, 11}) {
    Discriminant f(q);
    for (const auto& r : radii_up_to(f, 80)) {
      const auto pts = angles(r);
      const auto mats = matrix_angles(f, pairs_to_matrices(r, enumerate_pairs(r)));
      REQUIRE(mats.size() == pts.size() * static_cast<std::size_t>(f.unit_count() / 2));
    }
  }
}

TEST_CASE("counting matrices inside a radius") {
  for (int q : {3, 4, 7}) {
    Discriminant f(q);
    u64 running = brute_force_matrices(Radius(f, q)).size();
    CHECK(count_matrices_within(f, q) == running);
    for (i64 two_n = q + 2; two_n <= 300; two_n += 2) {
      running += brute_force_matrices(Radius(f, two_n)).size();
      REQUIRE(count_matrices_within(f, two_n) == running);
      REQUIRE(count_matrices_within(f, two_n + 1) == running);
    }
  }
}
