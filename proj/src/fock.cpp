#include "mcobs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace mcobs {

namespace {

bool all_finite(const CMatrix& m) { return m.allFinite(); }

Index ipow(Index base, int exp) {
  Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

FockTruncation::FockTruncation(int cutoff, int modes)
    : cutoff_(cutoff), modes_(modes) {
  if (cutoff < 1) throw InvalidArgument("cutoff must be >= 1, got " + std::to_string(cutoff));
  if (modes < 1 || modes > kMaxModes)
    throw InvalidArgument("mode count must be in [1, 3], got " + std::to_string(modes));
  dim_ = ipow(cutoff + 1, modes);
}

Index FockTruncation::flat_index(const Occupation& occ) const {
  Index flat = 0;
  for (int i = 0; i < modes_; ++i) {
    if (occ[i] < 0 || occ[i] > cutoff_)
      throw InvalidArgument("occupation " + std::to_string(occ[i]) + " outside [0, " +
                            std::to_string(cutoff_) + "]");
    flat = flat * (cutoff_ + 1) + occ[i];
  }
  return flat;
}

Occupation FockTruncation::occupation(Index flat) const {
  Occupation occ{0, 0, 0};
  for (int i = modes_ - 1; i >= 0; --i) {
    occ[i] = static_cast<int>(flat % (cutoff_ + 1));
    flat /= (cutoff_ + 1);
  }
  return occ;
}

int FockTruncation::total_photons(Index flat) const {
  int n = 0;
  for (int i = 0; i < modes_; ++i) {
    n += static_cast<int>(flat % (cutoff_ + 1));
    flat /= (cutoff_ + 1);
  }
  return n;
}

// ---------------------------------------------------------------------------

FockArray::FockArray(FockTruncation trunc, CVector amplitudes)
    : trunc_(trunc), amps_(std::move(amplitudes)) {
  if (amps_.size() != trunc_.dim())
    throw DimensionError("amplitude vector has length " + std::to_string(amps_.size()) +
                         ", truncation needs " + std::to_string(trunc_.dim()));
  if (!amps_.allFinite()) throw InvalidArgument("amplitudes must be finite");
}

FockArray FockArray::basis(FockTruncation trunc, const Occupation& occ) {
  CVector v = CVector::Zero(trunc.dim());
  v(trunc.flat_index(occ)) = 1.0;
  return FockArray(trunc, std::move(v));
}

FockArray FockArray::vacuum(FockTruncation trunc) { return basis(trunc, {0, 0, 0}); }

bool FockArray::is_normalized(double tol) const {
  return std::abs(amps_.squaredNorm() - 1.0) <= tol;
}

FockArray FockArray::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  return FockArray(trunc_, amps_ / n);
}

// ---------------------------------------------------------------------------

DensityOp::DensityOp(FockTruncation trunc, CMatrix matrix)
    : trunc_(trunc), rho_(std::move(matrix)) {
  if (rho_.rows() != trunc_.dim() || rho_.cols() != trunc_.dim())
    throw DimensionError("density matrix is " + std::to_string(rho_.rows()) + "x" +
                         std::to_string(rho_.cols()) + ", truncation needs " +
                         std::to_string(trunc_.dim()));
  if (!all_finite(rho_)) throw InvalidArgument("density matrix entries must be finite");
  const double scale = std::max(1.0, rho_.cwiseAbs().maxCoeff());
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance * scale)
    throw InvalidArgument("density matrix is not Hermitian");
}

DensityOp DensityOp::from_pure(const FockArray& psi) {
  const CVector& v = psi.amplitudes();
  return DensityOp(psi.truncation(), v * v.adjoint());
}

double DensityOp::purity() const { return (rho_ * rho_).trace().real(); }

bool DensityOp::is_normalized(double tol) const { return std::abs(trace() - 1.0) <= tol; }

DensityOp DensityOp::renormalized() const {
  const double t = trace();
  if (!(t > 0.0)) throw InvalidArgument("cannot renormalize a density matrix with trace <= 0");
  return DensityOp(trunc_, rho_ / t);
}

double DensityOp::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// ---------------------------------------------------------------------------

const FockTruncation& truncation_of(const State& s) {
  return std::visit([](const auto& x) -> const FockTruncation& { return x.truncation(); }, s);
}

bool is_pure(const State& s) { return std::holds_alternative<FockArray>(s); }

DensityOp to_density(const State& s) {
  if (const auto* psi = std::get_if<FockArray>(&s)) return DensityOp::from_pure(*psi);
  return std::get<DensityOp>(s);
}

double weight(const State& s) {
  if (const auto* psi = std::get_if<FockArray>(&s)) return psi->amplitudes().squaredNorm();
  return std::get<DensityOp>(s).trace();
}

State normalized(const State& s) {
  if (const auto* psi = std::get_if<FockArray>(&s)) return psi->normalized();
  return std::get<DensityOp>(s).renormalized();
}

void require_normalized(const State& s, const char* where) {
  const double w = weight(s);
  if (std::abs(w - 1.0) > kNormTolerance)
    throw InvalidArgument(std::string(where) + ": state is not normalized (weight " +
                          std::to_string(w) + "); renormalize explicitly");
}

namespace {

FockTruncation combined(const FockTruncation& a, const FockTruncation& b) {
  if (a.cutoff() != b.cutoff())
    throw InvalidArgument("tensor_product: cutoff mismatch (" + std::to_string(a.cutoff()) +
                          " vs " + std::to_string(b.cutoff()) + ")");
  if (a.modes() + b.modes() > kMaxModes)
    throw DimensionError("tensor_product: combined mode count exceeds 3");
  return FockTruncation(a.cutoff(), a.modes() + b.modes());
}

}  // namespace

FockArray tensor_product(const FockArray& a, const FockArray& b) {
  const FockTruncation t = combined(a.truncation(), b.truncation());
  const CVector& va = a.amplitudes();
  const CVector& vb = b.amplitudes();
  CVector out(t.dim());
  for (Index i = 0; i < va.size(); ++i) out.segment(i * vb.size(), vb.size()) = va(i) * vb;
  return FockArray(t, std::move(out));
}

DensityOp tensor_product(const DensityOp& a, const DensityOp& b) {
  const FockTruncation t = combined(a.truncation(), b.truncation());
  const CMatrix& ma = a.matrix();
  const CMatrix& mb = b.matrix();
  const Index nb = mb.rows();
  CMatrix out(t.dim(), t.dim());
  for (Index i = 0; i < ma.rows(); ++i)
    for (Index j = 0; j < ma.cols(); ++j) out.block(i * nb, j * nb, nb, nb) = ma(i, j) * mb;
  return DensityOp(t, std::move(out));
}

State tensor_product(const State& a, const State& b) {
  if (is_pure(a) && is_pure(b))
    return tensor_product(std::get<FockArray>(a), std::get<FockArray>(b));
  return tensor_product(to_density(a), to_density(b));
}

State tensor_power(const State& s, int copies) {
  if (copies < 1) throw InvalidArgument("tensor_power: copies must be >= 1");
  State out = s;
  for (int i = 1; i < copies; ++i) out = tensor_product(out, s);
  return out;
}

DensityOp partial_trace(const DensityOp& rho, std::span<const int> keep) {
  const FockTruncation& t = rho.truncation();
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::array<bool, kMaxModes> kept{false, false, false};
  for (int m : keep) {
    if (m < 0 || m >= t.modes())
      throw InvalidArgument("partial_trace: mode " + std::to_string(m) + " out of range");
    if (kept[m]) throw InvalidArgument("partial_trace: duplicate mode in keep set");
    kept[m] = true;
  }
  std::vector<int> keep_sorted(keep.begin(), keep.end());
  std::sort(keep_sorted.begin(), keep_sorted.end());

  const FockTruncation out_t(t.cutoff(), static_cast<int>(keep_sorted.size()));
  CMatrix out = CMatrix::Zero(out_t.dim(), out_t.dim());
  const Index d = t.dim();
  std::vector<Occupation> occ(d);
  std::vector<Index> reduced(d);
  std::vector<Index> traced(d);
  for (Index i = 0; i < d; ++i) {
    occ[i] = t.occupation(i);
    Index r = 0, q = 0;
    for (int m = 0; m < t.modes(); ++m) {
      if (kept[m])
        r = r * t.local_dim() + occ[i][m];
      else
        q = q * t.local_dim() + occ[i][m];
    }
    reduced[i] = r;
    traced[i] = q;
  }
  const CMatrix& m = rho.matrix();
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i)
      if (traced[i] == traced[j]) out(reduced[i], reduced[j]) += m(i, j);
  return DensityOp(out_t, std::move(out));
}

TailReport tail_mass(const State& s) {
  const FockTruncation& t = truncation_of(s);
  const int edge = t.cutoff() - 1;
  double tail = 0.0;
  double total = 0.0;
  for (Index i = 0; i < t.dim(); ++i) {
    const Occupation occ = t.occupation(i);
    double p = 0.0;
    if (const auto* psi = std::get_if<FockArray>(&s))
      p = std::norm(psi->amplitudes()(i));
    else
      p = std::get<DensityOp>(s).matrix()(i, i).real();
    total += p;
    bool boundary = false;
    for (int m = 0; m < t.modes(); ++m) boundary = boundary || occ[m] >= edge;
    if (boundary) tail += p;
  }
  TailReport r;
  r.tail_mass = total > 0.0 ? std::clamp(tail / total, 0.0, 1.0) : 0.0;
  return r;
}

State with_cutoff(const State& s, int cutoff) {
  const FockTruncation& from = truncation_of(s);
  const FockTruncation to(cutoff, from.modes());
  std::vector<Index> map(from.dim(), -1);
  for (Index i = 0; i < from.dim(); ++i) {
    const Occupation occ = from.occupation(i);
    bool fits = true;
    for (int m = 0; m < from.modes(); ++m) fits = fits && occ[m] <= cutoff;
    if (fits) map[i] = to.flat_index(occ);
  }
  if (const auto* psi = std::get_if<FockArray>(&s)) {
    CVector v = CVector::Zero(to.dim());
    for (Index i = 0; i < from.dim(); ++i)
      if (map[i] >= 0) v(map[i]) = psi->amplitudes()(i);
    return FockArray(to, std::move(v));
  }
  const CMatrix& m = std::get<DensityOp>(s).matrix();
  CMatrix out = CMatrix::Zero(to.dim(), to.dim());
  for (Index j = 0; j < from.dim(); ++j) {
    if (map[j] < 0) continue;
    for (Index i = 0; i < from.dim(); ++i)
      if (map[i] >= 0) out(map[i], map[j]) = m(i, j);
  }
  return DensityOp(to, std::move(out));
}

std::vector<double> photon_distribution(const State& s) {
  const FockTruncation& t = truncation_of(s);
  if (t.modes() != 1) throw DimensionError("photon_distribution expects a one-mode state");
  std::vector<double> p(t.dim());
  for (Index n = 0; n < t.dim(); ++n) {
    if (const auto* psi = std::get_if<FockArray>(&s))
      p[n] = std::norm(psi->amplitudes()(n));
    else
      p[n] = std::get<DensityOp>(s).matrix()(n, n).real();
  }
  return p;
}

}  // namespace mcobs
