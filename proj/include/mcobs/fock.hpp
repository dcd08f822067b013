#pragma once

// Truncated multi-mode Fock-space states.
//
// Index convention: |n_1,...,n_k> sits at flat index sum_i n_i (c+1)^(k-i),
// i.e. mode 0 is the most significant digit. Mode indices are 0-based in the
// C++ API and 1-based in every external interface (JSON, CLI).

#include <array>
#include <complex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mcobs/error.hpp"

namespace mcobs {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr int kMaxModes = 3;
inline constexpr double kNormTolerance = 1e-9;

/// Occupation numbers of up to three modes; unused trailing entries are 0.
using Occupation = std::array<int, kMaxModes>;

class FockTruncation {
 public:
  FockTruncation(int cutoff, int modes);

  int cutoff() const { return cutoff_; }
  int modes() const { return modes_; }
  int local_dim() const { return cutoff_ + 1; }
  Index dim() const { return dim_; }

  Index flat_index(const Occupation& occ) const;
  Occupation occupation(Index flat) const;
  int total_photons(Index flat) const;

  bool operator==(const FockTruncation&) const = default;

 private:
  int cutoff_;
  int modes_;
  Index dim_;
};

/// Pure state amplitudes. Never renormalized behind the caller's back.
class FockArray {
 public:
  FockArray(FockTruncation trunc, CVector amplitudes);

  static FockArray basis(FockTruncation trunc, const Occupation& occ);
  static FockArray vacuum(FockTruncation trunc);

  const FockTruncation& truncation() const { return trunc_; }
  const CVector& amplitudes() const { return amps_; }
  cplx amplitude(const Occupation& occ) const {
    return amps_(trunc_.flat_index(occ));
  }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = kNormTolerance) const;
  FockArray normalized() const;

 private:
  FockTruncation trunc_;
  CVector amps_;
};

/// Mixed state. The constructor checks shape, finiteness and Hermiticity;
/// trace normalization is checked by consumers, not enforced here.
class DensityOp {
 public:
  DensityOp(FockTruncation trunc, CMatrix matrix);

  static DensityOp from_pure(const FockArray& psi);

  const FockTruncation& truncation() const { return trunc_; }
  const CMatrix& matrix() const { return rho_; }

  double trace() const { return rho_.trace().real(); }
  double purity() const;
  bool is_normalized(double tol = kNormTolerance) const;
  DensityOp renormalized() const;
  /// Smallest eigenvalue; O(dim^3).
  double min_eigenvalue() const;

 private:
  FockTruncation trunc_;
  CMatrix rho_;
};

using State = std::variant<FockArray, DensityOp>;

struct TailReport {
  /// Weight on basis states with any n_i >= cutoff - 1.
  double tail_mass = 0.0;
  /// Weight removed when the state was projected onto the truncation.
  double discarded_mass = 0.0;

  double worst() const { return tail_mass > discarded_mass ? tail_mass : discarded_mass; }
  bool exceeds(double limit) const { return worst() > limit; }
};

const FockTruncation& truncation_of(const State& s);
bool is_pure(const State& s);
DensityOp to_density(const State& s);
/// Norm squared for pure states, trace for mixed ones.
double weight(const State& s);
State normalized(const State& s);
void require_normalized(const State& s, const char* where);

FockArray tensor_product(const FockArray& a, const FockArray& b);
DensityOp tensor_product(const DensityOp& a, const DensityOp& b);
/// Mixed kinds promote to DensityOp.
State tensor_product(const State& a, const State& b);
State tensor_power(const State& s, int copies);

DensityOp partial_trace(const DensityOp& rho, std::span<const int> keep);

TailReport tail_mass(const State& s);

/// Re-express a state at another cutoff. Raising pads with zeros; lowering
/// drops the amplitudes above the new cutoff without renormalizing.
State with_cutoff(const State& s, int cutoff);

/// Photon-number probabilities of a one-mode state.
std::vector<double> photon_distribution(const State& s);

}  // namespace mcobs
