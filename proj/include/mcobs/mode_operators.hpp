#pragma once

// Ladder and quadrature operators on a truncated Fock space, Gaussian
// unitaries obtained by exponentiating their quadratic generators, and the
// Heisenberg-picture mode matrices of passive elements. hbar = 1,
// a = (x + i p) / sqrt(2).

#include <string>
#include <variant>
#include <vector>

#include <Eigen/SparseCore>

#include "mcobs/fock.hpp"

namespace mcobs {

using SparseCMatrix = Eigen::SparseMatrix<cplx>;

class ModeOperator {
 public:
  /// `hermitian` is a claim; it is verified (within 1e-12 relative) when true.
  ModeOperator(FockTruncation trunc, SparseCMatrix matrix, bool hermitian = false);

  static ModeOperator identity(FockTruncation trunc);
  static ModeOperator zero(FockTruncation trunc);

  const FockTruncation& truncation() const { return trunc_; }
  const SparseCMatrix& matrix() const { return mat_; }
  bool hermitian() const { return hermitian_; }

  ModeOperator adjoint() const;
  CMatrix dense() const { return CMatrix(mat_); }

  friend ModeOperator operator+(const ModeOperator& a, const ModeOperator& b);
  friend ModeOperator operator-(const ModeOperator& a, const ModeOperator& b);
  friend ModeOperator operator*(const ModeOperator& a, const ModeOperator& b);
  friend ModeOperator operator*(cplx s, const ModeOperator& a);

 private:
  FockTruncation trunc_;
  SparseCMatrix mat_;
  bool hermitian_;
};

ModeOperator commutator(const ModeOperator& a, const ModeOperator& b);

ModeOperator annihilation(const FockTruncation& trunc, int mode);
ModeOperator creation(const FockTruncation& trunc, int mode);
ModeOperator number(const FockTruncation& trunc, int mode);
ModeOperator quadrature_x(const FockTruncation& trunc, int mode);
ModeOperator quadrature_p(const FockTruncation& trunc, int mode);
/// n_1 + ... + n_k
ModeOperator total_number(const FockTruncation& trunc);
/// sum_ij h_ij a_i^dag a_j (h is k x k). Matrix elements inside the box are exact.
ModeOperator bilinear_form(const FockTruncation& trunc, const CMatrix& h);

/// <psi|O|psi> or Tr(rho O).
cplx expectation(const ModeOperator& op, const State& state);

/// Largest |A_ij - B_ij| over basis pairs (i, j) that both satisfy `keep`.
template <typename Pred>
double max_abs_difference_on(const CMatrix& a, const CMatrix& b, const FockTruncation& t,
                             Pred keep) {
  double worst = 0.0;
  std::vector<Index> idx;
  for (Index i = 0; i < t.dim(); ++i)
    if (keep(t.occupation(i))) idx.push_back(i);
  for (Index j : idx)
    for (Index i : idx) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

/// Interior predicates used throughout the algebra checks.
struct AllModesAtMost {
  int modes;
  int limit;
  bool operator()(const Occupation& o) const {
    for (int m = 0; m < modes; ++m)
      if (o[m] > limit) return false;
    return true;
  }
};
struct TotalAtMost {
  int modes;
  int limit;
  bool operator()(const Occupation& o) const {
    int n = 0;
    for (int m = 0; m < modes; ++m) n += o[m];
    return n <= limit;
  }
};

double interior_difference(const ModeOperator& a, const ModeOperator& b, int margin = 2);

// ---------------------------------------------------------------------------
// Gaussian unitaries

/// Reflection: T = [[sqrt t, sqrt(1-t)], [sqrt(1-t), -sqrt t]] (default;
/// reproduces the fig1 / fig4 mode equations). Rotation: T = [[sqrt t,
/// sqrt(1-t)], [-sqrt(1-t), sqrt t]].
enum class BeamSplitterConvention { kReflection, kRotation };

struct PhaseRotation {
  int mode = 0;
  double theta = 0.0;  ///< a -> e^{-i theta} a
};
struct Squeeze {
  int mode = 0;
  cplx s{0.0, 0.0};  ///< S(s) = exp((s* a^2 - s a^dag^2) / 2)
};
struct Displace {
  int mode = 0;
  cplx alpha{0.0, 0.0};  ///< D(alpha) = exp(alpha a^dag - alpha* a)
};
struct BeamSplitter {
  int mode_a = 0;
  int mode_b = 1;
  double transmittance = 0.5;
  BeamSplitterConvention convention = BeamSplitterConvention::kReflection;
};

using GaussianUnitarySpec = std::variant<PhaseRotation, Squeeze, Displace, BeamSplitter>;

bool is_passive(const GaussianUnitarySpec& spec);
void validate(const GaussianUnitarySpec& spec, int modes);
std::string describe(const GaussianUnitarySpec& spec);

/// Single-particle matrix h of a passive element: U = exp(-i sum h_ij a_i^dag a_j)
/// and U^dag a U = exp(-i h) a. Modes outside the element are untouched.
CMatrix passive_single_particle_generator(const GaussianUnitarySpec& spec, int modes);

/// Heisenberg mode matrix T with U^dag a_i U = sum_j T_ij a_j. Passive only.
CMatrix mode_matrix(const GaussianUnitarySpec& spec, int modes);

/// T_last * ... * T_first. Empty list gives the identity.
CMatrix compose_circuit_mode_matrix(const std::vector<GaussianUnitarySpec>& specs, int modes);

/// Hermitian G with U = exp(-i G) on the truncation.
ModeOperator generator(const GaussianUnitarySpec& spec, const FockTruncation& trunc);

/// Dense U = exp(-i G); intended for small truncations and tests.
CMatrix unitary_matrix(const GaussianUnitarySpec& spec, const FockTruncation& trunc);

struct GatedState {
  State state;
  TailReport tail;
  bool tail_warning = false;
};

/// Evolve by U = exp(-iG) without forming U. The tail report of the result is
/// attached; `tail_warning` is set when it exceeds `tail_max`.
GatedState apply_unitary(const GaussianUnitarySpec& spec, const State& state,
                         double tail_max = 1e-8);

/// exp(t G) v by scaled Taylor steps; G sparse.
CVector expm_action(const SparseCMatrix& g, cplx t, const CVector& v);
CMatrix expm_action(const SparseCMatrix& g, cplx t, const CMatrix& v);

}  // namespace mcobs
