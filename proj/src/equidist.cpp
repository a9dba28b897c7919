#include "hcircle/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hcircle/parallel.hpp"

namespace hcircle {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Angles as fractions of a turn in [0, 1), sorted.
std::vector<double> to_turns(std::vector<double> angles) {
  if (angles.empty()) throw std::invalid_argument("circle_discrepancy: no angles");
  for (double& a : angles) {
    double t = a / kTwoPi;
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
    a = t;
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

}  // namespace

double circle_discrepancy(std::vector<double> angles) {
  const std::vector<double> x = to_turns(std::move(angles));
  const double N = static_cast<double>(x.size());
  // g(t) = #{x <= t}/N - t. Every arc difference is g(b) - g(a) taken with
  // one-sided limits, so the supremum is max g - min g. Both extremes sit at
  // data points or at the ends of [0, 1), where g is 0.
  double hi = 0.0, lo = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    hi = std::max(hi, static_cast<double>(j) / N - x[i]);
    lo = std::min(lo, static_cast<double>(i) / N - x[i]);
    i = j;
  }
  return std::min(1.0, hi - lo);
}

double circle_discrepancy_brute(const std::vector<double>& angles) {
  const std::vector<double> x = to_turns(angles);
  const std::size_t N = x.size();
  double best = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      double len = x[j] - x[i];
      if (len < 0) len += 1.0;
      std::size_t closed = 0, open = 0;
      for (std::size_t k = 0; k < N; ++k) {
        double off = x[k] - x[i];
        if (off < 0) off += 1.0;
        if (off <= len) ++closed;
        if (off > 0 && off < len) ++open;
      }
      if (i == j || x[i] == x[j]) {
        // degenerate arc {x_i} and its complement, the full circle minus a point
        open = N - closed;
        len = 1.0;
        best = std::max(best, static_cast<double>(closed) / N);
      }
      best = std::max(best, static_cast<double>(closed) / N - len);
      best = std::max(best, len - static_cast<double>(open) / N);
    }
  return std::min(1.0, best);
}

int default_et_terms(i64 two_n) {
  return std::max(1, static_cast<int>(std::ceil(std::log(static_cast<double>(two_n)))));
}

double et_bound(const Radius& radius, int K) {
  if (K < 1) throw std::invalid_argument("et_bound: K must be at least 1");
  const auto v = v_k_range(radius.field(), radius.m_factors(), K);
  double s = 0;
  for (int k = 1; k <= K; ++k) s += v[k - 1] / k;
  return 1.0 / (K + 1) + 3.0 * s;
}

DiscrepancyReport discrepancy_report(const Radius& radius, int K) {
  DiscrepancyReport r;
  r.two_n = radius.two_n();
  r.et_terms = K > 0 ? K : default_et_terms(radius.two_n());
  const auto pairs = enumerate_pairs(radius);
  const auto pts = points_from_pairs(radius, pairs);
  r.gamma_count = pairs.size();
  r.point_count = pts.size();
  r.discrepancy = pts.empty() ? 0.0 : circle_discrepancy(angles_of(radius.field(), pts));
  r.et_bound = et_bound(radius, r.et_terms);
  return r;
}

double discrepancy_exponent() { return std::log(std::numbers::pi / 2) / std::log(2.0); }

namespace {

Quantiles quantiles(std::vector<double> v) {
  Quantiles out;
  if (v.empty()) return out;
  std::sort(v.begin(), v.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(v.size() - 1, lo + 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  out.q25 = at(0.25);
  out.median = at(0.5);
  out.q75 = at(0.75);
  return out;
}

bool in_flat_set(const Discriminant& field, i64 two_n) {
  if (field.is_even()) return (two_n / 2) % 2 != 0;
  return two_n % field.q() != 0;
}

}  // namespace

SurveySummary summarize(const std::vector<SurveyRow>& rows, double X) {
  SurveySummary s;
  s.X = X;
  s.count = rows.size();
  s.density_ratio = static_cast<double>(s.count) * std::log(X) / X;
  s.density_ratio_half = s.density_ratio / 2;
  const double llx = std::log(std::log(X));
  std::vector<double> om, rs;
  u64 outside = 0;
  for (const auto& r : rows) {
    om.push_back(r.omega / llx);
    // M_n = (two_n^2 - q^2)/4 is at least 2 on valid radii, so loglog M_n can
    // be small or negative at the very first radii; those rows are skipped.
    const double m = static_cast<double>(r.two_n) * static_cast<double>(r.two_n) / 4.0;
    const double llm = std::log(std::log(m));
    if (llm > 0.5) rs.push_back(r.log2_r_star / llm);
    if (r.omega < 0.5 * llx || r.omega > 1.5 * llx) ++outside;
    if (r.in_B_flat) ++s.b_flat_count;
  }
  s.omega_over_loglog = quantiles(om);
  s.log2_rstar_over_loglog = quantiles(rs);
  s.omega_outside_fraction = rows.empty() ? 0.0 : static_cast<double>(outside) / static_cast<double>(rows.size());
  const double C = discrepancy_exponent();
  for (double e : {C - 0.1, C - 0.2, 0.45}) {
    u64 hit = 0;
    for (const auto& r : rows)
      if (r.gamma_count > 0 && r.discrepancy <= std::pow(static_cast<double>(r.gamma_count), -e)) ++hit;
    s.discrepancy_fractions.push_back(
        {e, rows.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(rows.size())});
  }
  s.degenerate = rows.size() < 5;
  return s;
}

SurveyResult survey(const Discriminant& field, double X, unsigned threads) {
  const std::vector<Radius> radii = radii_up_to(field, X);
  SurveyResult out;
  out.rows.resize(radii.size());
  parallel_for(radii.size(), threads, [&](std::size_t i) {
    const Radius& r = radii[i];
    SurveyRow row;
    row.two_n = r.two_n();
    const Factorization m = r.m_factors();
    const OmegaPair w = omega_pair(field, m);
    row.omega = w.omega;
    row.Omega = w.Omega;
    row.in_B_flat = in_flat_set(field, r.two_n());
    const auto pairs = enumerate_pairs(r);
    const auto pts = points_from_pairs(r, pairs);
    row.gamma_count = pairs.size();
    row.point_count = pts.size();
    row.log2_r_star = std::log2(static_cast<double>(r_star(field, m)));
    row.discrepancy = circle_discrepancy(angles_of(field, pts));
    out.rows[i] = row;
  });
  out.summary = summarize(out.rows, X);
  return out;
}

std::vector<Radius> sharp_radii(const Discriminant& field, double x) {
  std::vector<Radius> out;
  for (auto& r : radii_up_to(field, x))
    if (!in_flat_set(field, r.two_n())) out.push_back(std::move(r));
  return out;
}

SharpCheck sharp_factorization_check(const Radius& radius, int k) {
  const Discriminant& field = radius.field();
  if (radius.is_centre() || in_flat_set(field, radius.two_n()))
    throw std::invalid_argument("sharp_factorization_check: radius is not in the sharp set");
  SharpCheck c;
  c.two_n = radius.two_n();
  c.k = k;
  c.lhs = v_k(field, radius.m_factors(), k);
  const u64 np = radius.n_plus(), nm = radius.n_minus();
  if (!field.is_even()) {
    const u64 q = static_cast<u64>(field.q());
    if (np % q != 0 || nm % q != 0) throw std::logic_error("sharp_factorization_check: N+-/q not integral");
    c.rhs = v_k(field, np / q, k) * v_k(field, nm / q, k);
    c.holds = std::abs(c.lhs - c.rhs) <= kSharpTolerance;
    return c;
  }
  for (int j = 1; j <= 2; ++j) {
    const u64 d = u64{1} << j;
    if (np % d != 0 || nm % d != 0) continue;
    const double rhs = v_k(field, np / d, k) * v_k(field, nm / d, k);
    c.rhs_power[j - 1] = rhs;
    if (c.matching_power == 0 && std::abs(c.lhs - rhs) <= kSharpTolerance) {
      c.matching_power = j;
      c.rhs = rhs;
    }
  }
  if (c.matching_power == 0 && c.rhs_power[0]) c.rhs = *c.rhs_power[0];
  c.holds = c.matching_power != 0;
  return c;
}

CircleProblemResult circle_problem_sum(const Discriminant& field, double x, bool with_direct) {
  if (x < 1) throw std::invalid_argument("circle_problem_sum: x must be at least 1");
  CircleProblemResult r;
  r.x = x;
  const int q = field.q();
  r.max_two_n = static_cast<i64>(std::floor(q * x + 1e-9));
  r.main_term = 6.0 * x;
  u64 quarter_sum = 0;  // 4 * off-centre sum
  for (i64 two_n = q + 2; two_n <= r.max_two_n; two_n += 2) {
    Radius rad(field, two_n);
    const u64 a = r_count(field, rad.n_plus_factors());
    if (a == 0) continue;
    const u64 b = r_count(field, rad.n_minus_factors());
    quarter_sum += static_cast<u64>(rad.c4()) * a * b;
  }
  if (quarter_sum % 4 != 0) throw std::logic_error("circle_problem_sum: sum is not an integer");
  r.off_centre_sum = quarter_sum / 4;
  r.centre_stabilizer = static_cast<u64>(field.unit_count() / 2);
  const Radius centre(field, q);
  const u64 centre4 = static_cast<u64>(centre.c4()) * r_count(field, static_cast<u64>(q));
  if (centre4 % 4 != 0) throw std::logic_error("circle_problem_sum: centre term is not an integer");
  r.centre_formula = centre4 / 4;
  r.sum = r.off_centre_sum + r.centre_stabilizer;
  if (with_direct && x <= kDirectCountLimit) r.direct_count = count_matrices_within(field, r.max_two_n);
  return r;
}

}  // namespace hcircle
