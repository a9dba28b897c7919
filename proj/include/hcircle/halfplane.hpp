// Upper half-plane geometry around a Heegner point z_q.
//
// Scaled integer conventions used throughout:
//   two_n = 2*R(gamma; z_q)        (R is an integer or half an odd integer)
//   h     = x_gamma / lambda       (x_gamma is a multiple of lambda)
//   Y     = 2*y_gamma
// With these, x^2 + y^2 = n^2 - 4 lambda^4 becomes q*h^2 + Y^2 = two_n^2 - q^2.

#pragma once

#include <array>
#include <complex>

#include "hcircle/quadfield.hpp"

namespace hcircle {

struct PointH {
  double re = 0.0;
  double im = 1.0;
};

// Element of PSL(2,Z), stored as the representative with c > 0, or c = 0 and d > 0.
class UnimodularMatrix {
 public:
  // Throws std::invalid_argument unless ad - bc = 1.
  UnimodularMatrix(i64 a, i64 b, i64 c, i64 d);

  static UnimodularMatrix identity() { return {1, 0, 0, 1}; }

  i64 a() const { return a_; }
  i64 b() const { return b_; }
  i64 c() const { return c_; }
  i64 d() const { return d_; }

  UnimodularMatrix operator*(const UnimodularMatrix& o) const;

  friend auto operator<=>(const UnimodularMatrix&, const UnimodularMatrix&) = default;

 private:
  i64 a_, b_, c_, d_;
};

struct ScaledRadiusValue {
  i64 two_n;
  int q;
};

struct IntegerCoords {
  i64 h = 0;
  i64 Y = 0;
  friend auto operator<=>(const IntegerCoords&, const IntegerCoords&) = default;
};

// (r, u, s, t) with u + r z_q of norm n + 2 lambda^2 and t + s z_q of norm
// n - 2 lambda^2.
struct SplitCoords {
  i64 r = 0, u = 0, s = 0, t = 0;
  friend auto operator<=>(const SplitCoords&, const SplitCoords&) = default;
};

double cosh_distance(const PointH& z, const PointH& w);

PointH heegner_point(const Discriminant& field);

// Exact 2*R via
//   2R = 2N a^2 + 2b^2 + 2N^2 c^2 + 2N d^2 + 2*two_mu*(a-d)(b - N c) - two_mu^2 (ad + bc),
// N = |z_q|^2.
ScaledRadiusValue arithmetic_radius(const Discriminant& field, const UnimodularMatrix& gamma);

PointH apply_mobius(const UnimodularMatrix& gamma, const PointH& z);

// f(w) = i (w - z_q) / (w - conj(z_q)).
std::complex<double> disc_map(const Discriminant& field, const PointH& w);

// (x_gamma / lambda, 2 y_gamma) straight from the matrix entries.
IntegerCoords integer_coords(const Discriminant& field, const UnimodularMatrix& gamma);

SplitCoords split_coordinates(const Discriminant& field, const UnimodularMatrix& gamma);

// y + ix = (u + r z_q)(t + s conj(z_q)) in scaled coordinates:
//   h = r t - u s,   Y = 2 N r s + 2 u t + two_mu (r t + u s).
IntegerCoords coords_from_split(const Discriminant& field, const SplitCoords& v);

// Integer 4x4 matrix taking (r,u,s,t) to q*(a,b,c,d).
std::array<std::array<i64, 4>, 4> transfer_matrix(const Discriminant& field);

// q*(a,b,c,d) for the given split coordinates.
std::array<i64, 4> scaled_entries(const Discriminant& field, const SplitCoords& v);

// Every row of the transfer matrix applied to v vanishes mod q.
bool congruence_full(const Discriminant& field, const SplitCoords& v);
// q odd: r + 2u = s + 2t (mod q). q = 8: r = s (mod 2), u = t (mod 4).
// q = 4: r = s (mod 2), u = t (mod 2).
bool congruence_reduced(const Discriminant& field, const SplitCoords& v);

}  // namespace hcircle
