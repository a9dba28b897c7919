#include "hcircle/circles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hcircle {

Radius::Radius(const Discriminant& field, i64 two_n) : field_(field), two_n_(two_n) {
  if (two_n < field.q()) throw std::invalid_argument("radius: two_n must be at least q");
  if (mod(two_n - field.q(), 2) != 0) throw std::invalid_argument("radius: two_n must have the parity of q");
  if (two_n > (i64{1} << 31)) throw std::invalid_argument("radius: two_n too large");
  plus_factors_ = factorize(n_plus());
  if (n_minus() > 0) minus_factors_ = factorize(n_minus());
}

int Radius::c4() const {
  const i64 q = field_.q();
  if (field_.is_even()) return two_n_ % 4 == 0 ? 2 : 1;
  return two_n_ % q == 0 ? 2 : 1;
}

bool Radius::is_valid() const {
  if (is_centre()) return false;
  return b_indicator(field_, m_factors());
}

std::vector<Radius> radii_up_to(const Discriminant& field, double x) {
  std::vector<Radius> out;
  const i64 top = static_cast<i64>(std::floor(2.0 * x + 1e-9));
  for (i64 two_n = field.q() + 2; two_n <= top; two_n += 2) {
    Radius r(field, two_n);
    if (r.is_valid()) out.push_back(std::move(r));
  }
  return out;
}

namespace {

bool is_canonical(const SplitCoords& v) {
  for (i64 x : {v.r, v.u, v.s, v.t})
    if (x != 0) return x > 0;
  return false;
}

void require_off_centre(const Radius& radius, const char* what) {
  if (radius.two_n() <= radius.field().q())
    throw std::invalid_argument(std::string(what) + ": requires two_n > q");
}

// 2R(a0 + tc, b0 + td, c, d) = A t^2 + B t + C.
struct RowQuadratic {
  i128 A, B, C;
  i128 at(i128 t) const { return (A * t + B) * t + C; }
};

struct Row {
  i64 a0, b0, c, d;
};

i128 two_r(const Discriminant& field, i128 a, i128 b, i128 c, i128 d) {
  const i128 N = field.norm_z(), m = field.two_mu();
  return 2 * N * a * a + 2 * b * b + 2 * N * N * c * c + 2 * N * d * d + 2 * m * (a - d) * (b - N * c) -
         m * m * (a * d + b * c);
}

RowQuadratic quadratic_for(const Discriminant& field, const Row& row) {
  auto f = [&](i128 t) { return two_r(field, row.a0 + t * row.c, row.b0 + t * row.d, row.c, row.d); };
  const i128 fm = f(-1), f0 = f(0), fp = f(1);
  return {(fp + fm - 2 * f0) / 2, (fp - fm) / 2, f0};
}

// Canonical bottom rows (c, d) whose norm can reach 2R <= max_two_n, each
// with one top row completing it to determinant one.
template <class Visit>
void for_each_row(const Discriminant& field, i64 max_two_n, Visit&& visit) {
  const i128 q = field.q(), N = field.norm_z(), m = field.two_mu();
  const i128 T = max_two_n;
  const i128 disc = T * T - q * q;  // >= 0 when T >= q
  const long double bound = (static_cast<long double>(T) + std::sqrt(static_cast<long double>(disc))) /
                            static_cast<long double>(q);  // max N(d + c z_q)
  // q * N(d + cz) <= T + sqrt(T^2 - q^2), tested exactly.
  auto admissible = [&](i128 nd) {
    const i128 lhs = q * nd - T;
    return lhs <= 0 || lhs * lhs <= disc;
  };
  const i64 cmax = static_cast<i64>(std::sqrt(4.0L * bound / static_cast<long double>(q))) + 1;
  for (i64 c = 0; c <= cmax; ++c) {
    const long double room = 4.0L * bound - static_cast<long double>(q) * c * c;
    if (room < 0) continue;
    // (2d + m c)^2 <= room
    const long double w = std::sqrt(room);
    const i64 dlo = static_cast<i64>(std::floor((-w - static_cast<long double>(m * c)) / 2)) - 1;
    const i64 dhi = static_cast<i64>(std::ceil((w - static_cast<long double>(m * c)) / 2)) + 1;
    for (i64 d = dlo; d <= dhi; ++d) {
      if (c == 0 && d != 1) continue;
      if (gcd(static_cast<u64>(c), static_cast<u64>(d < 0 ? -d : d)) != 1) continue;
      const i128 nd = static_cast<i128>(d) * d + m * c * d + N * c * c;
      if (!admissible(nd)) continue;
      i64 x = 0, y = 0;
      ext_gcd(d, c, x, y);  // d x + c y = g = +-1
      const i64 g = d * x + c * y;
      visit(Row{x * g, -y * g, c, d});
    }
  }
}

}  // namespace

std::vector<SplitPair> enumerate_pairs(const Radius& radius) {
  require_off_centre(radius, "enumerate_pairs");
  const Discriminant& field = radius.field();
  const auto plus = norm_elements(field, radius.n_plus_factors());
  const auto minus = norm_elements(field, radius.n_minus_factors());
  std::vector<SplitPair> out;
  for (const auto& alpha : plus)
    for (const auto& beta : minus) {
      SplitPair p{alpha, beta};
      const SplitCoords v = p.coords();
      if (is_canonical(v) && congruence_reduced(field, v)) out.push_back(p);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<UnimodularMatrix> pairs_to_matrices(const Radius& radius, const std::vector<SplitPair>& pairs) {
  const Discriminant& field = radius.field();
  std::vector<UnimodularMatrix> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const auto e = scaled_entries(field, p.coords());
    for (i64 x : e)
      if (mod(x, field.q()) != 0) throw std::logic_error("pairs_to_matrices: pair does not give an integral matrix");
    const i64 q = field.q();
    UnimodularMatrix g(e[0] / q, e[1] / q, e[2] / q, e[3] / q);
    if (arithmetic_radius(field, g).two_n != radius.two_n())
      throw std::logic_error("pairs_to_matrices: matrix has the wrong radius");
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::logic_error("pairs_to_matrices: two pairs map to one matrix");
  return out;
}

std::vector<UnimodularMatrix> brute_force_matrices(const Radius& radius) {
  if (radius.two_n() > 1'000'000) throw std::invalid_argument("brute_force_matrices: two_n above 10^6");
  const Discriminant& field = radius.field();
  const i128 T = radius.two_n();
  std::vector<UnimodularMatrix> out;
  for_each_row(field, radius.two_n(), [&](const Row& row) {
    const RowQuadratic f = quadratic_for(field, row);
    // A t^2 + B t + (C - T) = 0
    const i128 disc = f.B * f.B - 4 * f.A * (f.C - T);
    if (disc < 0) return;
    i128 s = 0;
    if (!is_square128(static_cast<u128>(disc), nullptr)) return;
    s = static_cast<i128>(isqrt128(static_cast<u128>(disc)));
    for (i128 num : {-f.B - s, -f.B + s}) {
      if (num % (2 * f.A) != 0) continue;
      const i128 t = num / (2 * f.A);
      if (f.at(t) != T) continue;
      out.emplace_back(static_cast<i64>(row.a0 + t * row.c), static_cast<i64>(row.b0 + t * row.d), row.c, row.d);
      if (s == 0) break;
    }
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

u64 count_matrices_within(const Discriminant& field, i64 max_two_n) {
  if (max_two_n < field.q()) return 0;
  const i128 T = max_two_n;
  u64 total = 0;
  for_each_row(field, max_two_n, [&](const Row& row) {
    const RowQuadratic f = quadratic_for(field, row);
    const i128 disc = f.B * f.B - 4 * f.A * (f.C - T);
    if (disc < 0) return;
    const long double sq = std::sqrt(static_cast<long double>(disc));
    const long double den = 2.0L * static_cast<long double>(f.A);
    i128 lo = static_cast<i128>(std::ceil((-static_cast<long double>(f.B) - sq) / den));
    i128 hi = static_cast<i128>(std::floor((-static_cast<long double>(f.B) + sq) / den));
    while (f.at(lo - 1) <= T) --lo;
    while (lo <= hi && f.at(lo) > T) ++lo;
    while (f.at(hi + 1) <= T) ++hi;
    while (hi >= lo && f.at(hi) > T) --hi;
    if (hi >= lo) total += static_cast<u64>(hi - lo + 1);
  });
  return total;
}

std::vector<CirclePoint> lattice_points_direct(const Radius& radius) {
  const i128 q = radius.field().q(), T = radius.two_n();
  const i128 rhs = T * T - q * q;
  std::vector<CirclePoint> out;
  const i64 hmax = static_cast<i64>(isqrt(static_cast<u64>(rhs / q)));
  for (i64 h = 0; h <= hmax; ++h) {
    const i128 rest = rhs - q * h * h;
    if (rest < 0) break;
    u64 root = 0;
    if (!is_square(static_cast<u64>(rest), &root)) continue;
    for (i64 Y : {static_cast<i64>(root), -static_cast<i64>(root)}) {
      if (mod(Y - static_cast<i64>(T), static_cast<i64>(q)) != 0) continue;
      out.push_back({h, Y});
      if (h != 0) out.push_back({-h, Y});
      if (root == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CirclePoint> points_from_matrices(const Radius& radius, const std::vector<UnimodularMatrix>& gammas) {
  std::vector<CirclePoint> out;
  out.reserve(gammas.size());
  for (const auto& g : gammas) {
    const auto c = integer_coords(radius.field(), g);
    out.push_back({c.h, c.Y});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CirclePoint> points_from_pairs(const Radius& radius, const std::vector<SplitPair>& pairs) {
  std::vector<CirclePoint> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const auto c = coords_from_split(radius.field(), p.coords());
    out.push_back({c.h, c.Y});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CirclePoint> lattice_points(const Radius& radius) {
  require_off_centre(radius, "lattice_points");
  const auto gammas = pairs_to_matrices(radius, enumerate_pairs(radius));
  const auto from_matrices = points_from_matrices(radius, gammas);
  const auto direct = lattice_points_direct(radius);
  if (from_matrices != direct)
    throw std::logic_error("lattice_points: matrix image and direct solve differ at two_n = " +
                           std::to_string(radius.two_n()));
  const u64 expected = static_cast<u64>(radius.c4()) * r_count(radius.field(), radius.m_factors()) / 2;
  if (direct.size() != expected)
    throw std::logic_error("lattice_points: count differs from (c4/2) r_K(N+ N-) at two_n = " +
                           std::to_string(radius.two_n()));
  return direct;
}

double point_angle(const Discriminant& field, const CirclePoint& p) {
  double a = std::atan2(static_cast<double>(p.Y) / 2.0, field.lambda() * static_cast<double>(p.h));
  if (a < 0) a += 2 * std::numbers::pi;
  if (a >= 2 * std::numbers::pi) a -= 2 * std::numbers::pi;
  return a;
}

std::vector<double> angles_of(const Discriminant& field, const std::vector<CirclePoint>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(point_angle(field, p));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> angles(const Radius& radius) { return angles_of(radius.field(), lattice_points(radius)); }

std::vector<double> matrix_angles(const Discriminant& field, const std::vector<UnimodularMatrix>& gammas) {
  const PointH z = heegner_point(field);
  std::vector<double> out;
  out.reserve(gammas.size());
  for (const auto& g : gammas) {
    double a = std::arg(disc_map(field, apply_mobius(g, z)));
    if (a < 0) a += 2 * std::numbers::pi;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hcircle
