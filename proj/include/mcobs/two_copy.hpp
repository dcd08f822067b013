#pragma once

// Two-copy angular momentum (Schwinger representation) on modes 1, 2:
//   L_x = (n1 - n2)/2,  L_y = (a1^dag a2 + a1 a2^dag)/2,  L_z = (i/2)(a1 a2^dag - a1^dag a2)
// with L_z = (x1 p2 - p1 x2)/2 the uncertainty observable.

#include <vector>

#include "mcobs/distribution.hpp"
#include "mcobs/multicopy.hpp"

namespace mcobs {

struct AngularComponents {
  ModeOperator l_x;
  ModeOperator l_y;
  ModeOperator l_z;
  ModeOperator l_plus;
  ModeOperator l_minus;
  ModeOperator l_sq;  ///< L_x^2 + L_y^2 + L_z^2 (products of truncated matrices)
  ModeOperator l_0;   ///< (n1 + n2)/2
};

/// Mode-operator form.
AngularComponents build_angular_components(const FockTruncation& trunc);

/// The same components written as (1/2) A^dag sigma A and in quadratures.
struct AngularAlternativeForms {
  ModeOperator pauli_x, pauli_y, pauli_z;
  ModeOperator quad_x, quad_y, quad_z;
};
AngularAlternativeForms angular_alternative_forms(const FockTruncation& trunc);

/// Single-particle matrices h with L_i = sum h_jk a_j^dag a_k: sigma_z/2, sigma_x/2, sigma_y/2.
CMatrix lx_single_particle();
CMatrix ly_single_particle();
CMatrix lz_single_particle();
/// (sigma_z + i sigma_x)/2, i.e. L_+ = L_x + i L_y.
CMatrix lplus_single_particle();

/// Swaps the two modes: |n1, n2> -> |n2, n1>.
ModeOperator exchange_operator(const FockTruncation& trunc);

/// Eigenvectors ||l,m>> of L_z on the sector n1 + n2 = 2l, in sector
/// coordinates (index j = n1 of |j, 2l - j>), columns sorted by m. Each
/// vector's first nonzero amplitude is made real positive.
struct SectorEigenbasis {
  int twice_l = 0;
  CMatrix vectors;
  std::vector<int> twice_m;

  /// Column for m (= twice_m / 2); throws if |m| > l or parity mismatches.
  CVector vector_for(int twice_m) const;
  /// Embeds a column into a two-mode truncation; throws when 2l > cutoff.
  FockArray embedded(int twice_m, const FockTruncation& trunc) const;
};

SectorEigenbasis sector_eigenbasis(int twice_l);

/// Closed-form lowest-weight vector ||l,-l>>, normalized, sector coordinates.
CVector closed_form_lowest_weight(int twice_l);
/// Closed-form ||l,0>> for integer l (twice_l even), normalized.
CVector closed_form_m0(int twice_l);
/// ||l,-l>>, ||l,-l+1>>, ..., ||l,l>> by repeated application of L_+.
std::vector<CVector> raise_ladder(const CVector& lowest, int twice_l);

/// Phase convention shared by the eigenbasis: first |amplitude| > 1e-12 real positive.
CVector fix_phase(const CVector& v);

/// p_m = sum_l <<l,m|| rho (x) rho ||l,m>>, summed sector by sector.
OutcomeDistribution outcome_distribution_lz(const State& one_mode,
                                            const MultiCopyOptions& opts = {});

struct EntropyVariance {
  OutcomeDistribution distribution;
  double entropy = 0.0;   ///< nats
  double variance = 0.0;  ///< sum m^2 p_m - (sum m p_m)^2
};

EntropyVariance entropy_and_variance_lz(const State& one_mode, const MultiCopyOptions& opts = {});

/// Provider of L_z sector spectra backed by sector_eigenbasis.
const SpectrumProvider& lz_spectrum_provider();

}  // namespace mcobs
