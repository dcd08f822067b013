#pragma once

// Fixed-total-photon-number subspaces of k = 1..3 modes.
//
// Passive circuits and the multi-copy observables all commute with the total
// photon number, so everything on k copies of a one-mode state can be done one
// sector at a time, without a per-mode cutoff on the k-mode space.

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mcobs/mode_operators.hpp"

namespace mcobs {

/// Basis |n_1..n_k> with sum n_i = N, ordered lexicographically (n_1 slowest).
class SectorBasis {
 public:
  SectorBasis(int modes, int total);

  int modes() const { return modes_; }
  int total() const { return total_; }
  Index dim() const { return static_cast<Index>(occ_.size()); }
  const Occupation& occupation(Index i) const { return occ_[static_cast<std::size_t>(i)]; }
  Index index(const Occupation& occ) const;

  static Index dim_of(int modes, int total);

 private:
  int modes_;
  int total_;
  std::vector<Occupation> occ_;
};

/// sum_ij h_ij a_i^dag a_j restricted to the sector.
CMatrix sector_operator(const CMatrix& h, const SectorBasis& basis);

/// Amplitudes of psi_1 (x) ... (x) psi_k in the sector (one factor per mode).
CVector sector_amplitudes(std::span<const CVector* const> factors, const SectorBasis& basis);

/// Block of rho^(x)k on the sector.
CMatrix sector_block(const CMatrix& rho, const SectorBasis& basis);

/// Embeds a sector vector into a box truncation; throws if it does not fit.
FockArray embed_sector_vector(const CVector& v, const SectorBasis& basis,
                              const FockTruncation& trunc);

/// A passive circuit acting sector by sector. Element unitaries are built
/// per (element, photons in the element's modes) by exact diagonalization of
/// the restricted generator and cached.
class SectorCircuit {
 public:
  SectorCircuit(std::vector<GaussianUnitarySpec> elements, int modes);

  int modes() const { return modes_; }
  const std::vector<GaussianUnitarySpec>& elements() const { return elements_; }

  void apply(const SectorBasis& basis, CVector& v) const;
  /// B -> U B U^dag
  void apply(const SectorBasis& basis, CMatrix& block) const;
  /// diag(U B U^dag) without forming the last conjugation in full.
  Eigen::VectorXd output_diagonal(const SectorBasis& basis, CMatrix block) const;

  /// (K+1)x(K+1) unitary of a two-mode element in basis |j, K-j>, j = photons in mode_a.
  const CMatrix& element_unitary(std::size_t element, int photons) const;

 private:
  void apply_element(std::size_t e, const SectorBasis& basis, CVector& v) const;
  void apply_element(std::size_t e, const SectorBasis& basis, CMatrix& block, bool rows,
                     bool cols) const;

  std::vector<GaussianUnitarySpec> elements_;
  std::vector<CMatrix> h_;
  int modes_;
  mutable std::map<std::pair<std::size_t, int>, CMatrix> cache_;
};

/// Index groups of a sector for a two-mode element: for each spectator
/// occupation, the basis indices ordered by photons in mode_a.
std::vector<std::vector<Index>> pair_groups(const SectorBasis& basis, int mode_a, int mode_b);

}  // namespace mcobs
