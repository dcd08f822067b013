#pragma once

// Invariant suite behind `mcobs verify`: operator algebra, variance
// identities, exchange symmetry, the operator table, circuit equivalences and
// invariance checks, each with its measured residual.

#include <cstdint>
#include <string>
#include <vector>

#include "mcobs/circuits.hpp"

namespace mcobs {

struct VerifyConfig {
  /// Box cutoff for the operator identities (compared on the interior).
  int algebra_cutoff = 10;
  /// One-mode cutoff for the state-based checks.
  int cutoff = 40;
  double tol = 1e-9;
  /// States whose tail mass exceeds this make their check inconclusive.
  double tail_max = 1e-8;
  double squeeze_r = 0.5;
  BsConvention convention = BsConvention::kReflection;
  std::uint64_t seed = 1;
  int random_states = 10;
};

enum class CheckStatus { kPass, kFail, kInconclusive };

const char* status_name(CheckStatus s);

struct VerifyCheck {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool any_failed() const;
  bool any_inconclusive() const;
};

VerifyReport run_verification(const VerifyConfig& cfg = {});

/// Random one-mode state on `cutoff`: pure when rank is 1, otherwise a
/// normalized Wishart-type density matrix of the given rank.
State random_state(std::uint64_t seed, int cutoff, int rank);

}  // namespace mcobs
