#include "mcobs/three_copy.hpp"

#include <cmath>

#include "mcobs/circuits.hpp"

namespace mcobs {

namespace {

const cplx I(0.0, 1.0);

void require_three_modes(const FockTruncation& t) {
  if (t.modes() != 3) throw DimensionError("three-copy operators need a three-mode truncation");
}

ModeOperator hermitian(const ModeOperator& op) { return ModeOperator(op.truncation(), op.matrix(), true); }

}  // namespace

std::array<CMatrix, 3> gell_mann_generators() {
  CMatrix sx = CMatrix::Zero(3, 3), sy = CMatrix::Zero(3, 3), sz = CMatrix::Zero(3, 3);
  sx(1, 2) = -I;
  sx(2, 1) = I;
  sy(0, 2) = I;
  sy(2, 0) = -I;
  sz(0, 1) = -I;
  sz(1, 0) = I;
  return {sx, sy, sz};
}

CMatrix m_single_particle() {
  const auto s = gell_mann_generators();
  return (s[0] + s[1] + s[2]) / (2.0 * std::sqrt(3.0));
}

ThreeCopyOperators build_three_copy(const FockTruncation& t, ThreeCopyForm form) {
  require_three_modes(t);
  ModeOperator mx = ModeOperator::zero(t), my = mx, mz = mx;
  if (form == ThreeCopyForm::kModeOperators) {
    const auto a = [&](int m) { return annihilation(t, m); };
    const auto c = [&](int m) { return creation(t, m); };
    mx = 0.5 * I * (a(1) * c(2) - c(1) * a(2));
    my = 0.5 * I * (a(2) * c(0) - c(2) * a(0));
    mz = 0.5 * I * (a(0) * c(1) - c(0) * a(1));
  } else if (form == ThreeCopyForm::kQuadratures) {
    const auto x = [&](int m) { return quadrature_x(t, m); };
    const auto p = [&](int m) { return quadrature_p(t, m); };
    mx = cplx(0.5) * (x(1) * p(2) - p(1) * x(2));
    my = cplx(0.5) * (x(2) * p(0) - p(2) * x(0));
    mz = cplx(0.5) * (x(0) * p(1) - p(0) * x(1));
  } else {
    const auto s = gell_mann_generators();
    mx = bilinear_form(t, 0.5 * s[0]);
    my = bilinear_form(t, 0.5 * s[1]);
    mz = bilinear_form(t, 0.5 * s[2]);
  }
  const ModeOperator m = cplx(1.0 / std::sqrt(3.0)) * (mx + my + mz);
  return {hermitian(mx), hermitian(my), hermitian(mz), hermitian(m)};
}

ModeOperator m_squared_sum_closed_form(const FockTruncation& t) {
  require_three_modes(t);
  const ModeOperator n = total_number(t);
  ModeOperator raise = ModeOperator::zero(t), lower = raise;
  for (int m = 0; m < 3; ++m) {
    raise = raise + creation(t, m) * creation(t, m);
    lower = lower + annihilation(t, m) * annihilation(t, m);
  }
  const ModeOperator id = ModeOperator::identity(t);
  return hermitian(cplx(0.25) * (n * (n + id) - raise * lower));
}

namespace {

const SpectrumProvider& m_spectrum_provider() {
  static const SpectrumProvider provider = diagonalizing_provider(m_single_particle());
  return provider;
}

}  // namespace

OutcomeDistribution outcome_distribution_m(const State& s, MRoute route,
                                           const MultiCopyOptions& opts) {
  if (route == MRoute::kCircuit) return circuit_distribution(fig4_three_copy(), s, opts);
  return spectral_distribution(s, 3, m_spectrum_provider(), opts);
}

EntropyVariance entropy_and_variance_m(const State& s, MRoute route, const MultiCopyOptions& opts) {
  EntropyVariance out{outcome_distribution_m(s, route, opts)};
  out.entropy = out.distribution.entropy();
  out.variance = out.distribution.variance();
  return out;
}

DisplacementInvarianceReport displacement_invariance_check(const State& s, cplx alpha,
                                                           const MultiCopyOptions& opts,
                                                           int displaced_cutoff) {
  DisplacementInvarianceReport r;
  const int cutoff = displaced_cutoff > 0 ? displaced_cutoff : truncation_of(s).cutoff();
  const GatedState moved = apply_unitary(Displace{0, alpha}, with_cutoff(s, cutoff),
                                         opts.tail_max);
  r.displaced_tail = moved.tail;
  r.tail_warning = moved.tail_warning;
  r.before = outcome_distribution_m(s, MRoute::kCircuit, opts);
  r.after = outcome_distribution_m(normalized(moved.state), MRoute::kCircuit, opts);
  r.total_variation = total_variation(r.before, r.after);

  const CMatrix t = circuit_mode_matrix(fig4_first_stage());
  const CVector image = t * CVector::Constant(3, alpha);
  const cplx expected[3] = {std::sqrt(3.0) * alpha, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    r.first_stage_image[static_cast<std::size_t>(i)] = image(i);
    r.image_error = std::max(r.image_error, std::abs(image(i) - expected[i]));
  }
  return r;
}

}  // namespace mcobs
