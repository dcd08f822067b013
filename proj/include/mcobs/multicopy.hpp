#pragma once

// Outcome distributions of passive-circuit readouts and of single-particle
// observables sum_ij h_ij a_i^dag a_j on k copies of a one-mode state.
//
// Both are exact for the given (truncated) one-mode state: k copies of a
// cutoff-c state live in sectors N <= k c, which are handled in full.

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "mcobs/distribution.hpp"
#include "mcobs/sector.hpp"

namespace mcobs {

enum class MultiCopyMethod {
  kAuto,
  /// Work with the sector blocks of rho^(x)k.
  kBlocks,
  /// Expand rho = sum_j w_j |psi_j><psi_j| and treat each product term as a pure state.
  kPureTerms,
};

struct MultiCopyOptions {
  MultiCopyMethod method = MultiCopyMethod::kAuto;
  /// Sectors and product terms lighter than this are skipped; their weight is
  /// reported as pruned_mass.
  double prune = 1e-14;
  /// Input states with a larger tail mass are rejected (TailGateError).
  double tail_max = std::numeric_limits<double>::infinity();
};

/// Spectral data of an observable on one sector: orthonormal eigenvectors
/// (columns) and 2m for each column.
struct SectorSpectrum {
  CMatrix vectors;
  std::vector<int> twice_m;
};

/// Eigen-decomposition of sum h_ij a_i^dag a_j on a sector; eigenvalues must
/// be multiples of 1/2 (checked to 1e-8).
SectorSpectrum diagonalize_sector(const CMatrix& h, const SectorBasis& basis);

using SpectrumProvider = std::function<const SectorSpectrum&(const SectorBasis&)>;

/// Distribution of (n_a - n_b)/2 after `circuit` acts on `copies` copies.
OutcomeDistribution circuit_readout_distribution(const State& one_mode, int copies,
                                                 const SectorCircuit& circuit, int mode_a,
                                                 int mode_b, const MultiCopyOptions& opts = {});

/// Distribution of the observable whose sector spectra `spectrum` returns.
OutcomeDistribution spectral_distribution(const State& one_mode, int copies,
                                          const SpectrumProvider& spectrum,
                                          const MultiCopyOptions& opts = {});

/// Caching provider built on diagonalize_sector.
SpectrumProvider diagonalizing_provider(CMatrix h);

/// The method kAuto would pick for this input (exposed for tests and reports).
MultiCopyMethod choose_method(const State& one_mode, int copies, const MultiCopyOptions& opts);

}  // namespace mcobs
