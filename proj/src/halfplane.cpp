#include "hcircle/halfplane.hpp"

#include <stdexcept>
#include <string>

namespace hcircle {

UnimodularMatrix::UnimodularMatrix(i64 a, i64 b, i64 c, i64 d) : a_(a), b_(b), c_(c), d_(d) {
  if (static_cast<i128>(a) * d - static_cast<i128>(b) * c != 1)
    throw std::invalid_argument("matrix is not unimodular: (" + std::to_string(a) + "," + std::to_string(b) + ";" +
                                std::to_string(c) + "," + std::to_string(d) + ")");
  if (c_ < 0 || (c_ == 0 && d_ < 0)) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

double cosh_distance(const PointH& z, const PointH& w) {
  const double dx = z.re - w.re, dy = z.im - w.im;
  return 1.0 + (dx * dx + dy * dy) / (2.0 * z.im * w.im);
}

PointH heegner_point(const Discriminant& field) {
  return {field.two_mu() / 2.0, field.lambda()};
}

ScaledRadiusValue arithmetic_radius(const Discriminant& field, const UnimodularMatrix& g) {
  const i128 N = field.norm_z(), m = field.two_mu();
  const i128 a = g.a(), b = g.b(), c = g.c(), d = g.d();
  i128 two_n = 2 * N * a * a + 2 * b * b + 2 * N * N * c * c + 2 * N * d * d + 2 * m * (a - d) * (b - N * c) -
               m * m * (a * d + b * c);
  if ((two_n - field.q()) % 2 != 0) throw std::logic_error("arithmetic_radius: parity violated");
  return {static_cast<i64>(two_n), field.q()};
}

PointH apply_mobius(const UnimodularMatrix& g, const PointH& z) {
  const std::complex<double> w(z.re, z.im);
  const std::complex<double> num = static_cast<double>(g.a()) * w + static_cast<double>(g.b());
  const std::complex<double> den = static_cast<double>(g.c()) * w + static_cast<double>(g.d());
  const std::complex<double> out = num / den;
  // Im(gamma z) = Im(z)/|cz + d|^2 exactly, avoiding cancellation in the quotient.
  return {out.real(), z.im / std::norm(den)};
}

std::complex<double> disc_map(const Discriminant& field, const PointH& w) {
  const std::complex<double> z = field.z();
  const std::complex<double> ww(w.re, w.im);
  return std::complex<double>(0, 1) * (ww - z) / (ww - std::conj(z));
}

IntegerCoords integer_coords(const Discriminant& field, const UnimodularMatrix& g) {
  const i128 N = field.norm_z(), m = field.two_mu();
  const i128 a = g.a(), b = g.b(), c = g.c(), d = g.d();
  const i128 nd = d * d + m * c * d + N * c * c;  // N(d + c z_q)
  const i128 h = 2 * a * c * N + 2 * b * d + m * (a * d + b * c) - m * nd;
  const i128 Y = arithmetic_radius(field, g).two_n - field.q() * nd;
  return {static_cast<i64>(h), static_cast<i64>(Y)};
}

SplitCoords split_coordinates(const Discriminant& field, const UnimodularMatrix& g) {
  const i64 N = field.norm_z(), m = field.two_mu();
  return {g.a() + g.d(), g.b() - N * g.c() - m * g.d(), g.a() - g.d() - m * g.c(), g.b() + N * g.c()};
}

IntegerCoords coords_from_split(const Discriminant& field, const SplitCoords& v) {
  const i128 N = field.norm_z(), m = field.two_mu();
  const i128 r = v.r, u = v.u, s = v.s, t = v.t;
  return {static_cast<i64>(r * t - u * s), static_cast<i64>(2 * N * r * s + 2 * u * t + m * (r * t + u * s))};
}

std::array<std::array<i64, 4>, 4> transfer_matrix(const Discriminant& field) {
  const i64 N = field.norm_z(), m = field.two_mu();
  return {{
      {2 * N - m * m, -m, 2 * N, m},
      {m * N, 2 * N, -m * N, 2 * N - m * m},
      {-m, -2, m, 2},
      {2 * N, m, -2 * N, -m},
  }};
}

std::array<i64, 4> scaled_entries(const Discriminant& field, const SplitCoords& v) {
  const auto T = transfer_matrix(field);
  const std::array<i64, 4> x{v.r, v.u, v.s, v.t};
  std::array<i64, 4> out{};
  for (int i = 0; i < 4; ++i) {
    i128 acc = 0;
    for (int j = 0; j < 4; ++j) acc += static_cast<i128>(T[i][j]) * x[j];
    out[i] = static_cast<i64>(acc);
  }
  return out;
}

bool congruence_full(const Discriminant& field, const SplitCoords& v) {
  for (i64 e : scaled_entries(field, v))
    if (mod(e, field.q()) != 0) return false;
  return true;
}

bool congruence_reduced(const Discriminant& field, const SplitCoords& v) {
  switch (field.q()) {
    case 4:
      return mod(v.r - v.s, 2) == 0 && mod(v.u - v.t, 2) == 0;
    case 8:
      return mod(v.r - v.s, 2) == 0 && mod(v.u - v.t, 4) == 0;
    default:
      return mod(v.r + 2 * v.u - v.s - 2 * v.t, field.q()) == 0;
  }
}

}  // namespace hcircle
