#pragma once

// One-mode covariance matrices and Gaussian closed forms.

#include <iosfwd>
#include <span>

#include "mcobs/fock.hpp"

namespace mcobs {

struct CovarianceState {
  Eigen::Matrix2d gamma;  ///< [[Var x, cov], [cov, Var p]], cov = <{x,p}>/2 - <x><p>
  Eigen::Vector2d mean;   ///< (<x>, <p>)

  double det() const { return gamma.determinant(); }
  /// Second moments about the origin (gamma + mean mean^T).
  Eigen::Matrix2d raw_moments() const { return gamma + mean * mean.transpose(); }
};

/// Moments come from <a>, <a^2>, <n>, whose truncated matrix elements are
/// exact, so the result is exact for the truncated state.
CovarianceState covariance_of(const State& one_mode);

struct SymplecticSummary {
  double det_gamma;
  double nu;
  double purity;  ///< Gaussian purity 1/(2 nu)
};
SymplecticSummary symplectic_summary(const CovarianceState& cov);

struct SrReport {
  double det_gamma;
  bool satisfied;
};
/// det(gamma) >= 1/4 - tol.
SrReport sr_check(const CovarianceState& cov, double tol = 1e-9);

struct GaussianEntropies {
  double h_lz;  ///< entropy of the two-copy observable for a Gaussian state
  double h_xp;  ///< Wigner entropy ln(pi e) + ln(2 nu)
};
GaussianEntropies gaussian_entropy_closed_forms(double nu);

/// E(n) = -(2n(n+1)/(2n+1)) ln(n/(n+1)), with E(0) = 0.
double e_function(double mean_n);

/// CSV rows nu,H_Lz,h_xp.
void write_gaussian_curve_csv(std::ostream& out, std::span<const double> nu_grid);
/// CSV rows mean_n,E.
void write_e_curve_csv(std::ostream& out, std::span<const double> mean_n_grid);

}  // namespace mcobs
