#include "mcobs/mode_operators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mcobs {

namespace {

void check_mode(const FockTruncation& t, int mode) {
  if (mode < 0 || mode >= t.modes())
    throw InvalidArgument("mode index " + std::to_string(mode) + " out of range for " +
                          std::to_string(t.modes()) + "-mode truncation");
}

void check_same(const ModeOperator& a, const ModeOperator& b) {
  if (!(a.truncation() == b.truncation()))
    throw DimensionError("operator truncations differ");
}

double max_abs(const SparseCMatrix& m) {
  double r = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseCMatrix::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

double norm1(const SparseCMatrix& m) {
  double r = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    double col = 0.0;
    for (SparseCMatrix::InnerIterator it(m, k); it; ++it) col += std::abs(it.value());
    r = std::max(r, col);
  }
  return r;
}

template <typename Dense>
Dense taylor_expm_action(const SparseCMatrix& g, cplx t, const Dense& v) {
  const double scale = std::abs(t) * norm1(g);
  const int steps = std::max(1, static_cast<int>(std::ceil(scale)));
  const cplx dt = t / static_cast<double>(steps);
  Dense acc = v;
  for (int s = 0; s < steps; ++s) {
    Dense term = acc;
    Dense sum = acc;
    for (int k = 1; k < 200; ++k) {
      term = (g * term).eval() * (dt / static_cast<double>(k));
      sum += term;
      const double tn = term.norm();
      if (tn <= 1e-17 * sum.norm() || tn == 0.0) break;
    }
    acc = std::move(sum);
  }
  return acc;
}

}  // namespace

ModeOperator::ModeOperator(FockTruncation trunc, SparseCMatrix matrix, bool hermitian)
    : trunc_(trunc), mat_(std::move(matrix)), hermitian_(hermitian) {
  if (mat_.rows() != trunc_.dim() || mat_.cols() != trunc_.dim())
    throw DimensionError("operator matrix does not match truncation dimension");
  mat_.makeCompressed();
  if (hermitian_) {
    const SparseCMatrix diff = mat_ - SparseCMatrix(mat_.adjoint());
    if (max_abs(diff) > 1e-12 * std::max(1.0, max_abs(mat_)))
      throw InvalidArgument("operator flagged Hermitian is not Hermitian");
  }
}

ModeOperator ModeOperator::identity(FockTruncation trunc) {
  SparseCMatrix id(trunc.dim(), trunc.dim());
  id.setIdentity();
  return ModeOperator(trunc, std::move(id), true);
}

ModeOperator ModeOperator::zero(FockTruncation trunc) {
  return ModeOperator(trunc, SparseCMatrix(trunc.dim(), trunc.dim()), true);
}

ModeOperator ModeOperator::adjoint() const {
  return ModeOperator(trunc_, SparseCMatrix(mat_.adjoint()), hermitian_);
}

ModeOperator operator+(const ModeOperator& a, const ModeOperator& b) {
  check_same(a, b);
  return ModeOperator(a.trunc_, a.mat_ + b.mat_, a.hermitian_ && b.hermitian_);
}

ModeOperator operator-(const ModeOperator& a, const ModeOperator& b) {
  check_same(a, b);
  return ModeOperator(a.trunc_, a.mat_ - b.mat_, a.hermitian_ && b.hermitian_);
}

ModeOperator operator*(const ModeOperator& a, const ModeOperator& b) {
  check_same(a, b);
  return ModeOperator(a.trunc_, SparseCMatrix(a.mat_ * b.mat_), false);
}

ModeOperator operator*(cplx s, const ModeOperator& a) {
  return ModeOperator(a.trunc_, SparseCMatrix(s * a.mat_), a.hermitian_ && s.imag() == 0.0);
}

ModeOperator commutator(const ModeOperator& a, const ModeOperator& b) {
  return a * b - b * a;
}

ModeOperator annihilation(const FockTruncation& trunc, int mode) {
  check_mode(trunc, mode);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Index j = 0; j < trunc.dim(); ++j) {
    Occupation occ = trunc.occupation(j);
    const int n = occ[mode];
    if (n == 0) continue;
    occ[mode] = n - 1;
    trips.emplace_back(trunc.flat_index(occ), j, std::sqrt(static_cast<double>(n)));
  }
  SparseCMatrix m(trunc.dim(), trunc.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return ModeOperator(trunc, std::move(m));
}

ModeOperator creation(const FockTruncation& trunc, int mode) {
  return annihilation(trunc, mode).adjoint();
}

ModeOperator number(const FockTruncation& trunc, int mode) {
  check_mode(trunc, mode);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Index j = 0; j < trunc.dim(); ++j) {
    const int n = trunc.occupation(j)[mode];
    if (n > 0) trips.emplace_back(j, j, static_cast<double>(n));
  }
  SparseCMatrix m(trunc.dim(), trunc.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return ModeOperator(trunc, std::move(m), true);
}

ModeOperator total_number(const FockTruncation& trunc) {
  ModeOperator n = number(trunc, 0);
  for (int m = 1; m < trunc.modes(); ++m) n = n + number(trunc, m);
  return n;
}

ModeOperator bilinear_form(const FockTruncation& trunc, const CMatrix& h) {
  const int k = trunc.modes();
  if (h.rows() != k || h.cols() != k) throw DimensionError("bilinear_form: h must be k x k");
  ModeOperator out = ModeOperator::zero(trunc);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (h(i, j) != cplx(0.0)) out = out + h(i, j) * (creation(trunc, i) * annihilation(trunc, j));
  const bool herm = (h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14;
  return ModeOperator(trunc, out.matrix(), herm);
}

ModeOperator quadrature_x(const FockTruncation& trunc, int mode) {
  const ModeOperator a = annihilation(trunc, mode);
  return ModeOperator(trunc, (a.matrix() + SparseCMatrix(a.matrix().adjoint())) / std::sqrt(2.0),
                      true);
}

ModeOperator quadrature_p(const FockTruncation& trunc, int mode) {
  const ModeOperator a = annihilation(trunc, mode);
  const cplx f = cplx(0.0, -1.0 / std::sqrt(2.0));  // 1/(i sqrt 2)
  return ModeOperator(trunc, f * (a.matrix() - SparseCMatrix(a.matrix().adjoint())), true);
}

cplx expectation(const ModeOperator& op, const State& state) {
  if (!(op.truncation() == truncation_of(state)))
    throw DimensionError("expectation: operator and state truncations differ");
  if (const auto* psi = std::get_if<FockArray>(&state)) {
    const CVector& v = psi->amplitudes();
    return v.dot(op.matrix() * v);
  }
  const CMatrix& rho = std::get<DensityOp>(state).matrix();
  const CMatrix prod = op.matrix() * rho;
  return prod.trace();
}

double interior_difference(const ModeOperator& a, const ModeOperator& b, int margin) {
  check_same(a, b);
  const FockTruncation& t = a.truncation();
  return max_abs_difference_on(a.dense(), b.dense(), t,
                               AllModesAtMost{t.modes(), t.cutoff() - margin});
}

// ---------------------------------------------------------------------------

bool is_passive(const GaussianUnitarySpec& spec) {
  return std::holds_alternative<PhaseRotation>(spec) || std::holds_alternative<BeamSplitter>(spec);
}

void validate(const GaussianUnitarySpec& spec, int modes) {
  auto check = [modes](int m) {
    if (m < 0 || m >= modes)
      throw InvalidArgument("element mode " + std::to_string(m + 1) + " out of range for " +
                            std::to_string(modes) + " modes");
  };
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          check(e.mode_a);
          check(e.mode_b);
          if (e.mode_a == e.mode_b) throw InvalidArgument("beam splitter modes must be distinct");
          if (!(e.transmittance >= 0.0 && e.transmittance <= 1.0))
            throw InvalidArgument("beam splitter transmittance must lie in [0, 1]");
        } else if constexpr (std::is_same_v<T, PhaseRotation>) {
          check(e.mode);
          if (!std::isfinite(e.theta)) throw InvalidArgument("rotation angle must be finite");
        } else if constexpr (std::is_same_v<T, Squeeze>) {
          check(e.mode);
          if (!std::isfinite(e.s.real()) || !std::isfinite(e.s.imag()))
            throw InvalidArgument("squeezing parameter must be finite");
        } else {
          check(e.mode);
          if (!std::isfinite(e.alpha.real()) || !std::isfinite(e.alpha.imag()))
            throw InvalidArgument("displacement must be finite");
        }
      },
      spec);
}

std::string describe(const GaussianUnitarySpec& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, BeamSplitter>)
          os << "beam_splitter(" << e.mode_a + 1 << "," << e.mode_b + 1 << ", t=" << e.transmittance
             << ")";
        else if constexpr (std::is_same_v<T, PhaseRotation>)
          os << "phase_rotation(" << e.mode + 1 << ", theta=" << e.theta << ")";
        else if constexpr (std::is_same_v<T, Squeeze>)
          os << "squeeze(" << e.mode + 1 << ", s=" << e.s << ")";
        else
          os << "displace(" << e.mode + 1 << ", alpha=" << e.alpha << ")";
      },
      spec);
  return os.str();
}

CMatrix passive_single_particle_generator(const GaussianUnitarySpec& spec, int modes) {
  if (!is_passive(spec))
    throw InvalidArgument("non-passive element has no single-particle generator: " +
                          describe(spec));
  validate(spec, modes);
  CMatrix h = CMatrix::Zero(modes, modes);
  if (const auto* r = std::get_if<PhaseRotation>(&spec)) {
    h(r->mode, r->mode) = r->theta;
    return h;
  }
  const auto& bs = std::get<BeamSplitter>(spec);
  const double c = std::sqrt(bs.transmittance);
  const double s = std::sqrt(1.0 - bs.transmittance);
  const int a = bs.mode_a, b = bs.mode_b;
  if (bs.convention == BeamSplitterConvention::kReflection) {
    // exp(-ih) = 1 - 2 P_-, P_- the projector on the -1 eigenvector of T.
    const double hp = std::numbers::pi / 2.0;
    h(a, a) = hp * (1.0 - c);
    h(b, b) = hp * (1.0 + c);
    h(a, b) = -hp * s;
    h(b, a) = -hp * s;
  } else {
    const double chi = std::atan2(s, c);
    h(a, b) = cplx(0.0, chi);
    h(b, a) = cplx(0.0, -chi);
  }
  return h;
}

CMatrix mode_matrix(const GaussianUnitarySpec& spec, int modes) {
  if (!is_passive(spec))
    throw InvalidArgument("compose_circuit_mode_matrix: non-passive element " + describe(spec));
  validate(spec, modes);
  CMatrix t = CMatrix::Identity(modes, modes);
  if (const auto* r = std::get_if<PhaseRotation>(&spec)) {
    t(r->mode, r->mode) = std::polar(1.0, -r->theta);
    return t;
  }
  const auto& bs = std::get<BeamSplitter>(spec);
  const double c = std::sqrt(bs.transmittance);
  const double s = std::sqrt(1.0 - bs.transmittance);
  const int a = bs.mode_a, b = bs.mode_b;
  t(a, a) = c;
  t(a, b) = s;
  if (bs.convention == BeamSplitterConvention::kReflection) {
    t(b, a) = s;
    t(b, b) = -c;
  } else {
    t(b, a) = -s;
    t(b, b) = c;
  }
  return t;
}

CMatrix compose_circuit_mode_matrix(const std::vector<GaussianUnitarySpec>& specs, int modes) {
  CMatrix t = CMatrix::Identity(modes, modes);
  for (const auto& s : specs) t = mode_matrix(s, modes) * t;
  return t;
}

ModeOperator generator(const GaussianUnitarySpec& spec, const FockTruncation& trunc) {
  validate(spec, trunc.modes());
  const cplx i(0.0, 1.0);
  if (is_passive(spec)) {
    const CMatrix h = passive_single_particle_generator(spec, trunc.modes());
    ModeOperator g = ModeOperator::zero(trunc);
    for (int p = 0; p < trunc.modes(); ++p)
      for (int q = 0; q < trunc.modes(); ++q)
        if (h(p, q) != cplx(0.0)) g = g + h(p, q) * (creation(trunc, p) * annihilation(trunc, q));
    return ModeOperator(trunc, g.matrix(), true);
  }
  if (const auto* sq = std::get_if<Squeeze>(&spec)) {
    const ModeOperator a = annihilation(trunc, sq->mode);
    const ModeOperator ad = creation(trunc, sq->mode);
    const ModeOperator g = (0.5 * i * std::conj(sq->s)) * (a * a) - (0.5 * i * sq->s) * (ad * ad);
    return ModeOperator(trunc, g.matrix(), true);
  }
  const auto& d = std::get<Displace>(spec);
  const ModeOperator a = annihilation(trunc, d.mode);
  const ModeOperator ad = creation(trunc, d.mode);
  const ModeOperator g = (i * d.alpha) * ad - (i * std::conj(d.alpha)) * a;
  return ModeOperator(trunc, g.matrix(), true);
}

CMatrix unitary_matrix(const GaussianUnitarySpec& spec, const FockTruncation& trunc) {
  const ModeOperator g = generator(spec, trunc);
  return expm_action(g.matrix(), cplx(0.0, -1.0), CMatrix(CMatrix::Identity(trunc.dim(), trunc.dim())));
}

GatedState apply_unitary(const GaussianUnitarySpec& spec, const State& state, double tail_max) {
  const FockTruncation& t = truncation_of(state);
  const ModeOperator g = generator(spec, t);
  const cplx minus_i(0.0, -1.0);
  GatedState out{state, {}, false};
  if (const auto* psi = std::get_if<FockArray>(&state)) {
    out.state = FockArray(t, expm_action(g.matrix(), minus_i, psi->amplitudes()));
  } else {
    const CMatrix& rho = std::get<DensityOp>(state).matrix();
    const CMatrix half = expm_action(g.matrix(), minus_i, rho);
    CMatrix full = expm_action(g.matrix(), minus_i, CMatrix(half.adjoint()));
    full = 0.5 * (full + full.adjoint()).eval();
    out.state = DensityOp(t, std::move(full));
  }
  out.tail = tail_mass(out.state);
  out.tail_warning = out.tail.exceeds(tail_max);
  return out;
}

CVector expm_action(const SparseCMatrix& g, cplx t, const CVector& v) {
  return taylor_expm_action(g, t, v);
}

CMatrix expm_action(const SparseCMatrix& g, cplx t, const CMatrix& v) {
  return taylor_expm_action(g, t, v);
}

}  // namespace mcobs
