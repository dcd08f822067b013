#include "mcobs/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "mcobs/format.hpp"

namespace mcobs {

namespace {

struct LadderMoments {
  cplx a;
  cplx a2;
  double n;
};

LadderMoments ladder_moments(const State& s) {
  const FockTruncation& t = truncation_of(s);
  if (t.modes() != 1) throw DimensionError("covariance_of expects a one-mode state");
  const int c = t.cutoff();
  LadderMoments m{0.0, 0.0, 0.0};
  double w = 0.0;
  if (const auto* psi = std::get_if<FockArray>(&s)) {
    const CVector& v = psi->amplitudes();
    for (int k = 0; k <= c; ++k) {
      w += std::norm(v(k));
      m.n += k * std::norm(v(k));
      if (k >= 1) m.a += std::conj(v(k - 1)) * v(k) * std::sqrt(double(k));
      if (k >= 2) m.a2 += std::conj(v(k - 2)) * v(k) * std::sqrt(double(k) * (k - 1));
    }
  } else {
    const CMatrix& r = std::get<DensityOp>(s).matrix();
    // Tr(rho a) = sum_k sqrt(k) rho_{k,k-1}
    for (int k = 0; k <= c; ++k) {
      w += r(k, k).real();
      m.n += k * r(k, k).real();
      if (k >= 1) m.a += r(k, k - 1) * std::sqrt(double(k));
      if (k >= 2) m.a2 += r(k, k - 2) * std::sqrt(double(k) * (k - 1));
    }
  }
  if (std::abs(w - 1.0) > kNormTolerance)
    throw InvalidArgument("covariance_of: state is not normalized");
  return m;
}

}  // namespace

CovarianceState covariance_of(const State& s) {
  const LadderMoments m = ladder_moments(s);
  const double r2 = std::sqrt(2.0);
  CovarianceState out;
  out.mean << r2 * m.a.real(), r2 * m.a.imag();
  const double xx = m.a2.real() + m.n + 0.5;
  const double pp = -m.a2.real() + m.n + 0.5;
  const double xp = m.a2.imag();  // <{x,p}>/2
  out.gamma << xx - out.mean(0) * out.mean(0), xp - out.mean(0) * out.mean(1),
      xp - out.mean(0) * out.mean(1), pp - out.mean(1) * out.mean(1);
  return out;
}

SymplecticSummary symplectic_summary(const CovarianceState& cov) {
  const double d = cov.det();
  const double nu = std::sqrt(std::max(d, 0.0));
  return {d, nu, nu > 0.0 ? 1.0 / (2.0 * nu) : INFINITY};
}

SrReport sr_check(const CovarianceState& cov, double tol) {
  const double d = cov.det();
  return {d, d >= 0.25 - tol};
}

GaussianEntropies gaussian_entropy_closed_forms(double nu) {
  if (!std::isfinite(nu) || nu < 0.5 - 1e-12)
    throw InvalidArgument("symplectic eigenvalue must be >= 1/2");
  nu = std::max(nu, 0.5);
  const double two_nu = 2.0 * nu;
  double h = std::log(two_nu);
  if (two_nu > 1.0)
    h -= ((4.0 * nu * nu - 1.0) / (4.0 * nu)) * std::log((two_nu - 1.0) / (two_nu + 1.0));
  return {h, std::log(std::numbers::pi * std::numbers::e) + std::log(two_nu)};
}

double e_function(double n) {
  if (!std::isfinite(n) || n < 0.0) throw InvalidArgument("E(n) needs n >= 0");
  if (n == 0.0) return 0.0;
  return -(2.0 * n * (n + 1.0) / (2.0 * n + 1.0)) * std::log(n / (n + 1.0));
}

void write_gaussian_curve_csv(std::ostream& out, std::span<const double> nu_grid) {
  out << "nu,H_Lz,h_xp\n";
  for (double nu : nu_grid) {
    const GaussianEntropies g = gaussian_entropy_closed_forms(nu);
    out << format_number(nu) << ',' << format_number(g.h_lz) << ',' << format_number(g.h_xp)
        << '\n';
  }
}

void write_e_curve_csv(std::ostream& out, std::span<const double> grid) {
  out << "mean_n,E\n";
  for (double n : grid) out << format_number(n) << ',' << format_number(e_function(n)) << '\n';
}

}  // namespace mcobs
