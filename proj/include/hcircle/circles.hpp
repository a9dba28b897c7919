// Lattice points gamma z_q on a fixed hyperbolic circle around z_q.
//
// Two enumeration routes are kept side by side:
//   fast   pairs (u + r z_q, t + s z_q) of norms N+ = n + 2 lambda^2 and
//          N- = n - 2 lambda^2, filtered by the integrality congruence and
//          mapped to matrices by the inverse transfer matrix;
//   oracle bottom rows (c, d) with bounded norm, top rows solved from the
//          quadratic R(t) = n along a + tc, b + td.
// They are compared as sets of canonical PSL(2,Z) representatives.

#pragma once

#include <vector>

#include "hcircle/halfplane.hpp"

namespace hcircle {

class Radius {
 public:
  // two_n must satisfy two_n = q (mod 2) and two_n >= q.
  Radius(const Discriminant& field, i64 two_n);

  const Discriminant& field() const { return field_; }
  i64 two_n() const { return two_n_; }
  // n + 2 lambda^2 and n - 2 lambda^2.
  u64 n_plus() const { return static_cast<u64>((two_n_ + field_.q()) / 2); }
  u64 n_minus() const { return static_cast<u64>((two_n_ - field_.q()) / 2); }
  // n^2 - 4 lambda^4 = N+ * N-.
  u64 m_value() const { return n_plus() * n_minus(); }
  // 4*c_n in {1, 2}.
  int c4() const;
  bool is_centre() const { return two_n_ == field_.q(); }

  const Factorization& n_plus_factors() const { return plus_factors_; }
  const Factorization& n_minus_factors() const { return minus_factors_; }
  Factorization m_factors() const { return multiply(plus_factors_, minus_factors_); }

  // b_K(N+ N-) = 1 and two_n > q.
  bool is_valid() const;

 private:
  Discriminant field_;
  i64 two_n_;
  Factorization plus_factors_;
  Factorization minus_factors_;
};

struct CirclePoint {
  i64 h = 0;  // x / lambda
  i64 Y = 0;  // 2y
  friend auto operator<=>(const CirclePoint&, const CirclePoint&) = default;
};

struct SplitPair {
  AlgebraicInt first;   // u + r z_q, norm N+
  AlgebraicInt second;  // t + s z_q, norm N-
  SplitCoords coords() const { return {first.r, first.u, second.r, second.u}; }
  friend auto operator<=>(const SplitPair&, const SplitPair&) = default;
};

// Radii two_n <= 2x (parity of q, two_n > q) with b_K(N+ N-) = 1, ascending.
std::vector<Radius> radii_up_to(const Discriminant& field, double x);

// Canonical pairs (first nonzero of (r,u,s,t) positive). Throws on two_n <= q.
std::vector<SplitPair> enumerate_pairs(const Radius& radius);

// Sorted canonical matrices. Throws std::logic_error if a pair does not give
// an integral unimodular matrix of the right radius.
std::vector<UnimodularMatrix> pairs_to_matrices(const Radius& radius, const std::vector<SplitPair>& pairs);

// Gamma_{z_q,n} by the bottom-row search. Works at the centre too, where it
// returns the stabilizer of z_q. Requires two_n <= 10^6.
std::vector<UnimodularMatrix> brute_force_matrices(const Radius& radius);

// #{gamma in PSL(2,Z) : 2 R(gamma; z_q) <= max_two_n}, by the same row search.
u64 count_matrices_within(const Discriminant& field, i64 max_two_n);

// Direct solve of q h^2 + Y^2 = two_n^2 - q^2 with Y = two_n (mod q), sorted.
std::vector<CirclePoint> lattice_points_direct(const Radius& radius);

// Distinct images (h, Y) of the given matrices, sorted.
std::vector<CirclePoint> points_from_matrices(const Radius& radius, const std::vector<UnimodularMatrix>& gammas);

// Distinct products (u + r z_q)(t + s conj z_q) over the pairs, sorted.
std::vector<CirclePoint> points_from_pairs(const Radius& radius, const std::vector<SplitPair>& pairs);

// Computes the matrix image and the direct solve, requires them to agree and
// to have (c4/2) r_K(N+ N-) elements, and returns the common set.
std::vector<CirclePoint> lattice_points(const Radius& radius);

// arg(x + iy) in [0, 2 pi), x = lambda h, y = Y/2.
double point_angle(const Discriminant& field, const CirclePoint& p);
// Angles of lattice_points, sorted ascending.
std::vector<double> angles(const Radius& radius);
std::vector<double> angles_of(const Discriminant& field, const std::vector<CirclePoint>& points);

// arg f(gamma z_q) in [0, 2 pi) for each matrix, sorted (with repetition).
std::vector<double> matrix_angles(const Discriminant& field, const std::vector<UnimodularMatrix>& gammas);

}  // namespace hcircle
