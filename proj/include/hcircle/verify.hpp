// Cross-module identity suite run by the `verify` command.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcircle/quadfield.hpp"

namespace hcircle {

inline constexpr i64 kVerifyMaxTwoN = 10000;

struct VerifyOptions {
  std::vector<int> qs;
  i64 max_two_n = 200;
  unsigned threads = 0;
  // "c4" swaps the two values of 4 c_n in the gamma-count check.
  std::string inject_fault;
};

struct IdentityFailure {
  std::string identity;
  int q = 0;
  i64 two_n = 0;
  std::string detail;
};

struct IdentityTally {
  std::string identity;
  u64 checks = 0;
};

struct FieldReport {
  int q = 0;
  u64 radii_scanned = 0;
  u64 valid_radii = 0;
  u64 matrices = 0;
  u64 points = 0;
  std::vector<IdentityTally> tallies;  // fixed order
  std::optional<IdentityFailure> failure;
};

struct VerifyReport {
  std::vector<FieldReport> fields;
  std::optional<IdentityFailure> first_failure;
  bool ok() const { return !first_failure; }
  // Deterministic text: no timings, no thread counts.
  std::string text() const;
};

// Names of the identities in report order.
const std::vector<std::string>& identity_names();

// Throws std::invalid_argument on max_two_n outside [1, kVerifyMaxTwoN] or an
// unknown fault name.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace hcircle
