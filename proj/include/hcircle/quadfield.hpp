// Arithmetic in the nine imaginary quadratic fields of class number one.
//
// An element u + r*z_q of O_K is stored by its integer coordinates in the
// basis {1, z_q}, where z_q = mu + i*lambda, 2*mu = two_mu in {0,1} and
// 4*lambda^2 = q. No rational or floating type enters the exact paths: every
// norm is evaluated through
//
//   4*N(u + r z_q) = (2u + two_mu*r)^2 + q*r^2.
//
// Floating point appears only in the angle of an element and in v_k.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "hcircle/factor.hpp"

namespace hcircle {

class Discriminant {
 public:
  // q must be one of kAllQ; throws std::invalid_argument otherwise.
  explicit Discriminant(int q);

  int q() const { return q_; }
  // 2*mu: 0 for q = 4, 8 and 1 for odd q.
  int two_mu() const { return two_mu_; }
  // |O_K^x|: 6 for q = 3, 4 for q = 4, 2 otherwise.
  int unit_count() const { return unit_count_; }
  // |z_q|^2 = (q + two_mu)/4, always an integer.
  i64 norm_z() const { return norm_z_; }
  bool is_even() const { return two_mu_ == 0; }
  // The prime that ramifies: q for odd q, 2 for q = 4, 8.
  u64 ramified_prime() const { return is_even() ? 2 : static_cast<u64>(q_); }

  double lambda() const;
  std::complex<double> z() const;

  friend bool operator==(const Discriminant& a, const Discriminant& b) { return a.q_ == b.q_; }

 private:
  int q_;
  int two_mu_;
  int unit_count_;
  i64 norm_z_;
};

inline constexpr std::array<int, 9> kAllQ = {3, 4, 7, 8, 11, 19, 43, 67, 163};

// u + r*z_q.
struct AlgebraicInt {
  i64 u = 0;
  i64 r = 0;

  friend auto operator<=>(const AlgebraicInt&, const AlgebraicInt&) = default;
};

struct NormedCount {
  u64 M = 0;
  u64 value = 0;   // r_K(M)
  bool is_norm = false;
};

struct OmegaPair {
  int omega = 0;  // distinct split primes dividing M
  int Omega = 0;  // split primes with multiplicity
  friend bool operator==(const OmegaPair&, const OmegaPair&) = default;
};

// Kronecker symbol (-q / n).
int chi(const Discriminant& field, i64 n);

u64 norm(const Discriminant& field, const AlgebraicInt& a);

// 2*Re(a) = 2u + two_mu*r, an integer.
inline i64 twice_real(const Discriminant& field, const AlgebraicInt& a) {
  return 2 * a.u + field.two_mu() * a.r;
}

AlgebraicInt multiply(const Discriminant& field, const AlgebraicInt& a, const AlgebraicInt& b);
AlgebraicInt conjugate(const Discriminant& field, const AlgebraicInt& a);
inline AlgebraicInt negate(const AlgebraicInt& a) { return {-a.u, -a.r}; }
std::vector<AlgebraicInt> units(const Discriminant& field);
std::complex<double> to_complex(const Discriminant& field, const AlgebraicInt& a);

// unit_count * sum_{d | M} chi(d). Memoized per (q, M).
u64 r_count(const Discriminant& field, u64 M);
u64 r_count(const Discriminant& field, const Factorization& f);
NormedCount normed_count(const Discriminant& field, u64 M);

// Direct solve of 4M = (2u + two_mu r)^2 + q r^2 over |r| <= 2*sqrt(M/q).
// Ordered by r ascending, then u ascending.
std::vector<AlgebraicInt> enumerate_norm(const Discriminant& field, u64 M);

// Same set as enumerate_norm, generated from the factorization of M by
// multiplying prime elements. Cost is O(r_K(M)) after factoring, so it is
// usable for M far beyond the reach of the direct solve.
std::vector<AlgebraicInt> norm_elements(const Discriminant& field, const Factorization& f);
std::vector<AlgebraicInt> norm_elements(const Discriminant& field, u64 M);

// An element of norm p for a prime p that is split or ramified.
AlgebraicInt prime_element(const Discriminant& field, u64 p);

bool b_indicator(const Discriminant& field, u64 n);
bool b_indicator(const Discriminant& field, const Factorization& f);

OmegaPair omega_pair(const Discriminant& field, u64 M);
OmegaPair omega_pair(const Discriminant& field, const Factorization& f);

// The residue m used to select elements with 2y = 2m (mod q).
// q != 4, 8: least m in [0, q) with m^2 = M (mod q).
// q = 8: 1 if M odd, 0 if M = 0,2 (mod 8), 2 if M = 4,6 (mod 8).
// q = 4: least m with m^2 = M (mod 4), and m = 1 for M = 2 (mod 4).
// Throws std::domain_error when M is not a norm.
int residue_m(const Discriminant& field, u64 M);

// Elements of norm M whose real part y satisfies 2y = 2m (mod q).
std::vector<AlgebraicInt> restricted_elements(const Discriminant& field, const Factorization& f);

// Direct congruence count; 0 when M is not a norm. Cross-checked internally
// against r_star_closed_form.
u64 r_star(const Discriminant& field, u64 M);
u64 r_star(const Discriminant& field, const Factorization& f);
// r_K(M) if gcd(M, q) > 1, r_K(M)/2 otherwise; 0 when M is not a norm.
u64 r_star_closed_form(const Discriminant& field, u64 M);

// Normalized |sum exp(i k theta(y + ix))| over restricted_elements.
double v_k(const Discriminant& field, u64 M, i64 k);
double v_k(const Discriminant& field, const Factorization& f, i64 k);
// v_1 .. v_kmax in one pass; element j-1 holds v_j.
std::vector<double> v_k_range(const Discriminant& field, const Factorization& f, int kmax);

// Principal argument of y + ix in (-pi, pi].
double element_angle(const Discriminant& field, const AlgebraicInt& a);

namespace detail {
u64 sqrt_mod_prime(u64 a, u64 p);
// X^2 + q Y^2 = 4p for a split odd prime p, returned as an element of norm p.
AlgebraicInt cornacchia_prime_element(const Discriminant& field, u64 p);
}  // namespace detail

}  // namespace hcircle
