#include "hcircle/verify.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hcircle/circles.hpp"
#include "hcircle/equidist.hpp"
#include "hcircle/parallel.hpp"

namespace hcircle {

namespace {

enum Id : std::size_t {
  kCoshRadius,
  kRadiusParity,
  kIntegerNorm,
  kDiscMap,
  kSplitProduct,
  kCongruence,
  kOracle,
  kGammaCount,
  kStabilizer,
  kPointSet,
  kPointCount,
  kPointRstar,
  kRstarClosed,
  kWeylSum,
  kVkMultiplicative,
  kVkVanishing,
  kMatrixPointDiscrepancy,
  kErdosTuran,
  kIdCount
};

const std::vector<std::string> kNames = {
    "cosh_radius_identity",    "radius_parity",       "integer_norm_identity", "disc_map_identity",
    "split_product_identity",  "congruence_equivalence", "matrix_oracle_equivalence", "gamma_count_formula",
    "stabilizer_multiplicity", "point_set_equality",  "point_count_formula",   "point_count_rstar",
    "rstar_closed_form",       "weyl_sum_identity",   "vk_multiplicativity",   "vk_vanishing",
    "matrix_point_discrepancy", "erdos_turan_bound",
};

struct RadiusOutcome {
  std::array<u64, kIdCount> checks{};
  bool valid = false;
  u64 matrices = 0;
  u64 points = 0;
  std::optional<IdentityFailure> failure;
};

class Checker {
 public:
  Checker(RadiusOutcome& out, int q, i64 two_n) : out_(out), q_(q), two_n_(two_n) {}
  // Records one check; returns false once something has failed.
  bool operator()(Id id, bool ok, const std::string& detail = {}) {
    if (out_.failure) return false;
    ++out_.checks[id];
    if (!ok) out_.failure = IdentityFailure{kNames[id], q_, two_n_, detail};
    return ok;
  }

 private:
  RadiusOutcome& out_;
  int q_;
  i64 two_n_;
};

std::string str(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

RadiusOutcome check_radius(const Discriminant& f, i64 two_n, bool fault_c4) {
  RadiusOutcome out;
  Checker check(out, f.q(), two_n);
  const int q = f.q();
  const Radius r(f, two_n);
  out.valid = r.is_valid();

  const auto plus = norm_elements(f, r.n_plus_factors());
  const auto minus = norm_elements(f, r.n_minus_factors());
  for (const auto& a : plus)
    for (const auto& b : minus) {
      const SplitCoords v{a.r, a.u, b.r, b.u};
      if (!check(kCongruence, congruence_full(f, v) == congruence_reduced(f, v))) return out;
    }

  const auto pairs = enumerate_pairs(r);
  const auto gammas = pairs_to_matrices(r, pairs);
  const auto brute = brute_force_matrices(r);
  out.matrices = gammas.size();
  if (!check(kOracle, gammas == brute,
             "pairs give " + std::to_string(gammas.size()) + " matrices, row search " + std::to_string(brute.size())))
    return out;

  int c4 = r.c4();
  if (fault_c4) c4 = 3 - c4;
  const u64 predicted4 = static_cast<u64>(c4) * r_count(f, r.n_minus_factors()) * r_count(f, r.n_plus_factors());
  if (!check(kGammaCount, predicted4 == 4 * gammas.size(),
             "|Gamma| = " + std::to_string(gammas.size()) + ", (c4/4) r(N-) r(N+) = " + str(predicted4 / 4.0)))
    return out;

  const PointH z = heegner_point(f);
  const double np = static_cast<double>(r.n_plus());
  std::map<CirclePoint, u64> hits;
  for (const auto& g : gammas) {
    const PointH gz = apply_mobius(g, z);
    const double c = q * cosh_distance(z, gz);
    if (!check(kCoshRadius, std::abs(c - static_cast<double>(two_n)) <= 1e-6 * static_cast<double>(two_n),
               "q cosh rho = " + str(c)))
      return out;
    const i64 tn = arithmetic_radius(f, g).two_n;
    if (!check(kRadiusParity, tn == two_n && mod(tn - q, 2) == 0)) return out;
    const IntegerCoords ic = integer_coords(f, g);
    const i128 lhs = static_cast<i128>(q) * ic.h * ic.h + static_cast<i128>(ic.Y) * ic.Y;
    const i128 rhs = static_cast<i128>(two_n) * two_n - static_cast<i128>(q) * q;
    if (!check(kIntegerNorm, lhs == rhs && mod(ic.Y - two_n, q) == 0)) return out;
    const std::complex<double> w = disc_map(f, gz);
    const std::complex<double> xy(f.lambda() * static_cast<double>(ic.h), ic.Y / 2.0);
    if (!check(kDiscMap, std::abs(np * w - xy) <= 1e-6 * np)) return out;
    const SplitCoords v = split_coordinates(f, g);
    const bool split_ok = coords_from_split(f, v) == ic && norm(f, {v.u, v.r}) == r.n_plus() &&
                          norm(f, {v.t, v.s}) == r.n_minus();
    if (!check(kSplitProduct, split_ok)) return out;
    ++hits[{ic.h, ic.Y}];
  }

  const auto direct = lattice_points_direct(r);
  std::vector<CirclePoint> image;
  for (const auto& [p, n] : hits) image.push_back(p);
  out.points = direct.size();
  if (!check(kPointSet, image == direct,
             "matrix image has " + std::to_string(image.size()) + " points, direct solve " +
                 std::to_string(direct.size())))
    return out;
  for (const auto& [p, n] : hits)
    if (!check(kStabilizer, n == static_cast<u64>(f.unit_count() / 2))) return out;
  if (!out.valid) return out;

  const Factorization m = r.m_factors();
  const u64 rk = r_count(f, m);
  if (!check(kPointCount, 2 * direct.size() == static_cast<u64>(r.c4()) * rk)) return out;
  const u64 closed = r_star_closed_form(f, r.m_value());
  if (!check(kRstarClosed, r_star(f, m) == closed)) return out;
  if (!check(kPointRstar, direct.size() == closed)) return out;

  for (int k = 1; k <= 20; ++k) {
    std::complex<double> s = 0;
    for (const auto& p : direct)
      s += std::polar(1.0, k * point_angle(f, p));
    const double want = static_cast<double>(closed) * v_k(f, m, k);
    if (!check(kWeylSum, std::abs(std::abs(s) - want) <= 1e-9, "k = " + std::to_string(k))) return out;
  }
  if (gcd(static_cast<i64>(r.n_plus()), static_cast<i64>(r.n_minus())) == 1) {
    for (int k = 1; k <= 12; ++k) {
      const double d =
          v_k(f, m, k) - v_k(f, r.n_plus_factors(), k) * v_k(f, r.n_minus_factors(), k);
      if (!check(kVkMultiplicative, std::abs(d) <= 1e-9, "k = " + std::to_string(k))) return out;
    }
  }
  if (q == 3 || q == 4) {
    for (int k = 1; k <= 12; ++k) {
      const bool vanishes = q == 3 ? k % 3 != 0 : k % 2 != 0;
      if (!vanishes) continue;
      if (!check(kVkVanishing, v_k(f, m, k) <= 1e-12, "k = " + std::to_string(k))) return out;
    }
  }

  const double dp = circle_discrepancy(angles_of(f, direct));
  const double dm = circle_discrepancy(matrix_angles(f, gammas));
  if (!check(kMatrixPointDiscrepancy, std::abs(dp - dm) <= 1e-9, str(dp) + " vs " + str(dm))) return out;
  const double et = et_bound(r, default_et_terms(two_n));
  check(kErdosTuran, dp <= et, str(dp) + " > " + str(et));
  return out;
}

}  // namespace

const std::vector<std::string>& identity_names() { return kNames; }

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.max_two_n < 1 || options.max_two_n > kVerifyMaxTwoN)
    throw std::invalid_argument("verify: max_two_n must lie in [1, " + std::to_string(kVerifyMaxTwoN) + "]");
  if (!options.inject_fault.empty() && options.inject_fault != "c4")
    throw std::invalid_argument("verify: unknown fault '" + options.inject_fault + "'");
  const bool fault_c4 = options.inject_fault == "c4";
  VerifyReport report;
  for (int q : options.qs) {
    const Discriminant f(q);
    std::vector<i64> radii;
    for (i64 t = q + 2; t <= options.max_two_n; t += 2) radii.push_back(t);
    std::vector<RadiusOutcome> outcomes(radii.size());
    parallel_for(radii.size(), options.threads,
                 [&](std::size_t i) { outcomes[i] = check_radius(f, radii[i], fault_c4); });
    FieldReport fr;
    fr.q = q;
    fr.radii_scanned = radii.size();
    std::array<u64, kIdCount> totals{};
    for (const auto& o : outcomes) {
      fr.valid_radii += o.valid ? 1 : 0;
      fr.matrices += o.matrices;
      fr.points += o.points;
      for (std::size_t i = 0; i < kIdCount; ++i) totals[i] += o.checks[i];
      if (o.failure && !fr.failure) fr.failure = o.failure;
    }
    for (std::size_t i = 0; i < kIdCount; ++i) fr.tallies.push_back({kNames[i], totals[i]});
    if (fr.failure && !report.first_failure) report.first_failure = fr.failure;
    report.fields.push_back(std::move(fr));
  }
  return report;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  os << "hcircle verify report v1\n";
  for (const auto& f : fields) {
    os << "q=" << f.q << " radii_scanned=" << f.radii_scanned << " valid_radii=" << f.valid_radii
       << " matrices=" << f.matrices << " points=" << f.points << '\n';
    for (const auto& t : f.tallies) {
      const bool failed_here = f.failure && f.failure->identity == t.identity;
      os << "  " << t.identity << " checks=" << t.checks << (failed_here ? " FAIL" : " ok") << '\n';
    }
    if (f.failure)
      os << "  first failure: " << f.failure->identity << " at two_n=" << f.failure->two_n << " ("
         << f.failure->detail << ")\n";
  }
  if (first_failure)
    os << "result: FAIL identity=" << first_failure->identity << " q=" << first_failure->q
       << " two_n=" << first_failure->two_n << '\n';
  else
    os << "result: PASS\n";
  return os.str();
}

}  // namespace hcircle
