// Norms from O_K in short shifts: b_K(n) b_K(n+h), the progression used to
// bound such counts from below, and the sifted count over that progression.

#pragma once

#include <cstdint>
#include <vector>

#include "hcircle/quadfield.hpp"

namespace hcircle {

enum class PrimeClass { D1, Dminus1, Neither };

struct Classification {
  PrimeClass cls = PrimeClass::Neither;
  bool both = false;  // n = 1 lies in both sets
};

// D1: every prime factor splits. Dminus1: every prime factor is inert.
Classification classify(const Discriminant& field, u64 n);

// b_K(n) for n in [lo, hi), lo >= 1, by a sieve over all primes up to sqrt(hi).
std::vector<std::uint8_t> b_sieve(const Discriminant& field, u64 lo, u64 hi);

// sum_{1 <= n <= x} b_K(n) b_K(n+h), with b_K(m) = 0 for m <= 0.
u64 shifted_count(const Discriminant& field, double x, i64 h, unsigned threads = 0);

struct ProgressionSpec {
  int q = 0;
  i64 h_original = 0;
  i64 h_normalized = 0;  // ramified part stripped, sign chosen
  int stripped_power = 0;  // h_original = +-p^stripped_power * |h_normalized|
  int sigma = 0;
  u64 n0 = 0;
  u64 n1 = 0;
  bool swapped = false;  // roles of n and n + h exchanged
  bool negated = false;  // h replaced by -h
};

// Throws std::invalid_argument for h = 0.
ProgressionSpec build_progression(const Discriminant& field, i64 h);

// n_j = n1 j + n0 and the two coprime factors of 4^-sigma q^-1 n_j (n_j + h):
// first = n_j / (4^sigma q), second = n_j + h_normalized.
struct ProgressionTerm {
  u64 n = 0;
  u64 first = 0;
  u64 second = 0;
};
ProgressionTerm progression_term(const ProgressionSpec& spec, u64 j);

// #{1 <= j <= y : first * second in D1}.
u64 b_star_count(const Discriminant& field, const ProgressionSpec& spec, double y);

// #{1 <= j <= y : first * second has no inert prime factor below z}.
// Throws std::invalid_argument unless z > 2.
u64 sifted_count(const Discriminant& field, const ProgressionSpec& spec, double y, double z);

struct SiftedDecomposition {
  double y = 0, z = 0;
  u64 sifted = 0;   // A(M, z)
  u64 b_star = 0;   // terms in D1
  u64 d12 = 0;      // D1 part times exactly two inert primes > z
  u64 d14 = 0;      // D1 part times exactly four inert primes > z
  u64 other = 0;    // sifted terms in none of the above
  bool holds() const { return sifted == b_star + d12 + d14; }
};

// Classifies every term by factorization; z = y^(1/s).
SiftedDecomposition sifted_decomposition(const Discriminant& field, const ProgressionSpec& spec, double y,
                                         double s);

}  // namespace hcircle
