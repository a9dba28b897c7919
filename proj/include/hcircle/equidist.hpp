// Angular statistics of lattice points on hyperbolic circles.

#pragma once

#include <optional>
#include <vector>

#include "hcircle/circles.hpp"

namespace hcircle {

// sup over arcs I of |#{theta in I}/N - |I|/(2 pi)|, angles in [0, 2 pi).
// Sorting plus one linear pass; throws std::invalid_argument on empty input.
double circle_discrepancy(std::vector<double> angles);
// The same supremum by testing every arc between two data angles, both
// closed and open. O(N^2); meant as a cross-check.
double circle_discrepancy_brute(const std::vector<double>& angles);

// ceil(log two_n), at least 1.
int default_et_terms(i64 two_n);

// 1/(K+1) + 3 sum_{k<=K} v_k(M_n)/k. Throws unless K >= 1.
double et_bound(const Radius& radius, int K);

struct DiscrepancyReport {
  i64 two_n = 0;
  u64 point_count = 0;
  double discrepancy = 0;
  double et_bound = 0;
  int et_terms = 0;
  u64 gamma_count = 0;
};

// Uses the pair route for points and matrices (no brute force involved).
DiscrepancyReport discrepancy_report(const Radius& radius, int K = 0);

struct SurveyRow {
  i64 two_n = 0;
  int omega = 0;
  int Omega = 0;
  bool in_B_flat = false;
  double log2_r_star = 0;
  u64 point_count = 0;
  u64 gamma_count = 0;
  double discrepancy = 0;
};

struct Quantiles {
  double q25 = 0, median = 0, q75 = 0;
};

struct DiscrepancyFraction {
  double exponent = 0;  // fraction of rows with D_n <= |Gamma|^(-exponent)
  double fraction = 0;
};

struct SurveySummary {
  double X = 0;
  u64 count = 0;
  // count * log X / X and the half-scaled count * log X / (2X).
  double density_ratio = 0;
  double density_ratio_half = 0;
  Quantiles omega_over_loglog;        // omega_K(M_n) / loglog X
  Quantiles log2_rstar_over_loglog;   // log2 r*(M_n) / loglog M_n
  double omega_outside_fraction = 0;  // omega outside (1 +- 0.5) loglog X
  std::vector<DiscrepancyFraction> discrepancy_fractions;
  u64 b_flat_count = 0;
  bool degenerate = false;  // fewer than 5 rows; quantiles are not meaningful
};

struct SurveyResult {
  std::vector<SurveyRow> rows;
  SurveySummary summary;
};

// log(pi/2)/log 2.
double discrepancy_exponent();

SurveyResult survey(const Discriminant& field, double X, unsigned threads = 0);
SurveySummary summarize(const std::vector<SurveyRow>& rows, double X);

// v_k(N+ N-) against v_k(N+/d) v_k(N-/d), d = q for odd q and d = 2^j,
// j in {1, 2}, for q = 4, 8.
struct SharpCheck {
  i64 two_n = 0;
  int k = 0;
  double lhs = 0;
  double rhs = 0;                      // odd q: the d = q product
  std::optional<double> rhs_power[2];  // even q: j = 1, 2 when integral
  int matching_power = 0;              // even q: first j that matches, 0 if none
  bool holds = false;
};
inline constexpr double kSharpTolerance = 1e-9;

// Requires a radius in the sharp set: odd q with q | two_n, or even q with
// n = two_n/2 even. Throws std::invalid_argument otherwise.
SharpCheck sharp_factorization_check(const Radius& radius, int k);

// Valid radii with two_n <= 2x in the sharp set, ascending.
std::vector<Radius> sharp_radii(const Discriminant& field, double x);

struct CircleProblemResult {
  double x = 0;
  i64 max_two_n = 0;               // floor(q x)
  u64 off_centre_sum = 0;          // sum over q < two_n <= q x of (c4/4) r(N-) r(N+)
  u64 centre_stabilizer = 0;       // unit_count / 2
  u64 centre_formula = 0;          // (c4/4) r(0) r(q) with r(0) = 1
  u64 sum = 0;                     // off_centre_sum + centre_stabilizer
  std::optional<u64> direct_count; // #{gamma : cosh rho <= x}, x <= 10^3 only
  double main_term = 0;            // 6x
};
inline constexpr double kDirectCountLimit = 1000.0;

CircleProblemResult circle_problem_sum(const Discriminant& field, double x, bool with_direct = true);

}  // namespace hcircle
