#pragma once

// Three-copy observables on modes 1, 2, 3:
//   M_x = (x2 p3 - p2 x3)/2,  M_y = (x3 p1 - p3 x1)/2,  M_z = (x1 p2 - p1 x2)/2,
//   M = (M_x + M_y + M_z)/sqrt(3).

#include <array>

#include "mcobs/two_copy.hpp"

namespace mcobs {

struct ThreeCopyOperators {
  ModeOperator m_x;
  ModeOperator m_y;
  ModeOperator m_z;
  ModeOperator m;
};

enum class ThreeCopyForm { kModeOperators, kQuadratures, kGellMann };

ThreeCopyOperators build_three_copy(const FockTruncation& trunc,
                                    ThreeCopyForm form = ThreeCopyForm::kModeOperators);

/// S_x = lambda_7, S_y = -lambda_5, S_z = lambda_2.
std::array<CMatrix, 3> gell_mann_generators();
/// h with M = sum h_ij a_i^dag a_j.
CMatrix m_single_particle();

/// (N(N+1) - (sum a_i^dag^2)(sum a_i^2)) / 4 on the box.
ModeOperator m_squared_sum_closed_form(const FockTruncation& trunc);

enum class MRoute {
  /// Symmetric three-mode circuit followed by a photon-number difference on modes 2, 3.
  kCircuit,
  /// Per-sector diagonalization of M.
  kDiagonalization,
};

OutcomeDistribution outcome_distribution_m(const State& one_mode, MRoute route = MRoute::kCircuit,
                                           const MultiCopyOptions& opts = {});
EntropyVariance entropy_and_variance_m(const State& one_mode, MRoute route = MRoute::kCircuit,
                                       const MultiCopyOptions& opts = {});

struct DisplacementInvarianceReport {
  OutcomeDistribution before;
  OutcomeDistribution after;
  double total_variation = 0.0;
  /// First-stage mode matrix applied to (alpha, alpha, alpha).
  std::array<cplx, 3> first_stage_image{};
  /// max |image - (sqrt(3) alpha, 0, 0)|
  double image_error = 0.0;
  TailReport displaced_tail;
  bool tail_warning = false;
};

/// Compares the M distribution of rho with that of D(alpha) rho D(alpha)^dag.
/// The displaced state is built at `displaced_cutoff` (default: the input's).
DisplacementInvarianceReport displacement_invariance_check(const State& one_mode, cplx alpha,
                                                           const MultiCopyOptions& opts = {},
                                                           int displaced_cutoff = 0);

}  // namespace mcobs
