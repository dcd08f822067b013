#include "mcobs/sector.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace mcobs {

SectorBasis::SectorBasis(int modes, int total) : modes_(modes), total_(total) {
  if (modes < 1 || modes > kMaxModes)
    throw InvalidArgument("sector mode count must be in [1, 3]");
  if (total < 0) throw InvalidArgument("sector photon number must be >= 0");
  occ_.reserve(static_cast<std::size_t>(dim_of(modes, total)));
  if (modes == 1) {
    occ_.push_back({total, 0, 0});
  } else if (modes == 2) {
    for (int n1 = 0; n1 <= total; ++n1) occ_.push_back({n1, total - n1, 0});
  } else {
    for (int n1 = 0; n1 <= total; ++n1)
      for (int n2 = 0; n2 <= total - n1; ++n2) occ_.push_back({n1, n2, total - n1 - n2});
  }
}

Index SectorBasis::dim_of(int modes, int total) {
  if (modes == 1) return 1;
  if (modes == 2) return total + 1;
  return static_cast<Index>(total + 1) * (total + 2) / 2;
}

Index SectorBasis::index(const Occupation& o) const {
  int sum = 0;
  for (int m = 0; m < modes_; ++m) {
    if (o[m] < 0) throw InvalidArgument("negative occupation");
    sum += o[m];
  }
  if (sum != total_) throw InvalidArgument("occupation is outside the sector");
  if (modes_ == 1) return 0;
  if (modes_ == 2) return o[0];
  const Index n1 = o[0];
  return n1 * (total_ + 1) - n1 * (n1 - 1) / 2 + o[1];
}

CMatrix sector_operator(const CMatrix& h, const SectorBasis& b) {
  const int k = b.modes();
  if (h.rows() != k || h.cols() != k)
    throw DimensionError("single-particle matrix must be " + std::to_string(k) + "x" +
                         std::to_string(k));
  CMatrix out = CMatrix::Zero(b.dim(), b.dim());
  for (Index c = 0; c < b.dim(); ++c) {
    const Occupation& o = b.occupation(c);
    for (int i = 0; i < k; ++i) {
      out(c, c) += h(i, i) * double(o[i]);
      for (int j = 0; j < k; ++j) {
        if (i == j || o[j] == 0 || h(i, j) == cplx(0.0)) continue;
        Occupation t = o;
        t[j] -= 1;
        t[i] += 1;
        out(b.index(t), c) += h(i, j) * std::sqrt(double(o[i] + 1) * o[j]);
      }
    }
  }
  return out;
}

CVector sector_amplitudes(std::span<const CVector* const> factors, const SectorBasis& b) {
  if (static_cast<int>(factors.size()) != b.modes())
    throw DimensionError("need one factor per mode");
  CVector v(b.dim());
  for (Index c = 0; c < b.dim(); ++c) {
    const Occupation& o = b.occupation(c);
    cplx a = 1.0;
    for (int m = 0; m < b.modes(); ++m) {
      const CVector& f = *factors[m];
      if (o[m] >= f.size()) {
        a = 0.0;
        break;
      }
      a *= f(o[m]);
    }
    v(c) = a;
  }
  return v;
}

CMatrix sector_block(const CMatrix& rho, const SectorBasis& b) {
  const Index d = b.dim();
  const Index c1 = rho.rows();
  CMatrix out = CMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    const Occupation& oj = b.occupation(j);
    bool fits = true;
    for (int m = 0; m < b.modes(); ++m) fits = fits && oj[m] < c1;
    if (!fits) continue;
    for (Index i = 0; i < d; ++i) {
      const Occupation& oi = b.occupation(i);
      cplx a = 1.0;
      for (int m = 0; m < b.modes() && a != cplx(0.0); ++m) {
        if (oi[m] >= c1) {
          a = 0.0;
          break;
        }
        a *= rho(oi[m], oj[m]);
      }
      out(i, j) = a;
    }
  }
  return out;
}

FockArray embed_sector_vector(const CVector& v, const SectorBasis& b, const FockTruncation& t) {
  if (t.modes() != b.modes()) throw DimensionError("mode count mismatch");
  if (b.total() > t.cutoff())
    throw DimensionError("sector with " + std::to_string(b.total()) +
                         " photons exceeds the truncation (cutoff " + std::to_string(t.cutoff()) +
                         ")");
  CVector out = CVector::Zero(t.dim());
  for (Index i = 0; i < b.dim(); ++i) out(t.flat_index(b.occupation(i))) = v(i);
  return FockArray(t, std::move(out));
}

std::vector<std::vector<Index>> pair_groups(const SectorBasis& b, int a, int c) {
  const int k = b.modes();
  if (a == c || a < 0 || c < 0 || a >= k || c >= k)
    throw InvalidArgument("invalid mode pair");
  const int n = b.total();
  std::vector<std::vector<Index>> groups;
  if (k == 2) {
    groups.emplace_back();
    for (int j = 0; j <= n; ++j) {
      Occupation o{0, 0, 0};
      o[a] = j;
      o[c] = n - j;
      groups.back().push_back(b.index(o));
    }
    return groups;
  }
  const int s = 3 - a - c;
  for (int ns = 0; ns <= n; ++ns) {
    const int kk = n - ns;
    groups.emplace_back();
    for (int j = 0; j <= kk; ++j) {
      Occupation o{0, 0, 0};
      o[a] = j;
      o[c] = kk - j;
      o[s] = ns;
      groups.back().push_back(b.index(o));
    }
  }
  return groups;
}

// ---------------------------------------------------------------------------

SectorCircuit::SectorCircuit(std::vector<GaussianUnitarySpec> elements, int modes)
    : elements_(std::move(elements)), modes_(modes) {
  for (const auto& e : elements_) {
    if (!is_passive(e))
      throw InvalidArgument("sector evolution needs passive elements, got " + describe(e));
    validate(e, modes);
    h_.push_back(passive_single_particle_generator(e, modes));
  }
}

const CMatrix& SectorCircuit::element_unitary(std::size_t e, int photons) const {
  const auto key = std::make_pair(e, photons);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const auto* bs = std::get_if<BeamSplitter>(&elements_.at(e));
  if (!bs) throw InvalidArgument("element_unitary is defined for beam splitters only");
  const int a = bs->mode_a, c = bs->mode_b;
  const CMatrix& h = h_[e];
  const int kk = photons;
  CMatrix gen = CMatrix::Zero(kk + 1, kk + 1);
  for (int j = 0; j <= kk; ++j) {
    gen(j, j) = h(a, a) * double(j) + h(c, c) * double(kk - j);
    if (j < kk) gen(j + 1, j) = h(a, c) * std::sqrt(double(j + 1) * (kk - j));
    if (j > 0) gen(j - 1, j) = h(c, a) * std::sqrt(double(j) * (kk - j + 1));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gen);
  const Eigen::VectorXd& lam = es.eigenvalues();
  CVector phases(kk + 1);
  for (int j = 0; j <= kk; ++j) phases(j) = std::exp(cplx(0.0, -lam(j)));
  CMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return cache_.emplace(key, std::move(u)).first->second;
}

namespace {

void check_basis(const SectorBasis& b, int modes) {
  if (b.modes() != modes) throw DimensionError("sector mode count does not match the circuit");
}

}  // namespace

void SectorCircuit::apply_element(std::size_t e, const SectorBasis& b, CVector& v) const {
  if (const auto* r = std::get_if<PhaseRotation>(&elements_[e])) {
    for (Index i = 0; i < b.dim(); ++i)
      v(i) *= std::exp(cplx(0.0, -r->theta * b.occupation(i)[r->mode]));
    return;
  }
  const auto& bs = std::get<BeamSplitter>(elements_[e]);
  for (const auto& g : pair_groups(b, bs.mode_a, bs.mode_b)) {
    const CMatrix& u = element_unitary(e, static_cast<int>(g.size()) - 1);
    const CVector part = v(g);
    v(g) = u * part;
  }
}

void SectorCircuit::apply_element(std::size_t e, const SectorBasis& b, CMatrix& m, bool rows,
                                  bool cols) const {
  if (const auto* r = std::get_if<PhaseRotation>(&elements_[e])) {
    CVector ph(b.dim());
    for (Index i = 0; i < b.dim(); ++i)
      ph(i) = std::exp(cplx(0.0, -r->theta * b.occupation(i)[r->mode]));
    if (rows) m = ph.asDiagonal() * m;
    if (cols) m = m * ph.conjugate().asDiagonal();
    return;
  }
  const auto& bs = std::get<BeamSplitter>(elements_[e]);
  for (const auto& g : pair_groups(b, bs.mode_a, bs.mode_b)) {
    const CMatrix& u = element_unitary(e, static_cast<int>(g.size()) - 1);
    if (rows) {
      const CMatrix part = m(g, Eigen::all);
      m(g, Eigen::all) = u * part;
    }
    if (cols) {
      const CMatrix part = m(Eigen::all, g);
      m(Eigen::all, g) = part * u.adjoint();
    }
  }
}

void SectorCircuit::apply(const SectorBasis& b, CVector& v) const {
  check_basis(b, modes_);
  for (std::size_t e = 0; e < elements_.size(); ++e) apply_element(e, b, v);
}

void SectorCircuit::apply(const SectorBasis& b, CMatrix& m) const {
  check_basis(b, modes_);
  for (std::size_t e = 0; e < elements_.size(); ++e) apply_element(e, b, m, true, true);
}

Eigen::VectorXd SectorCircuit::output_diagonal(const SectorBasis& b, CMatrix m) const {
  check_basis(b, modes_);
  Eigen::VectorXd diag(b.dim());
  std::size_t n = elements_.size();
  // A trailing phase rotation does not change the diagonal.
  while (n > 0 && std::holds_alternative<PhaseRotation>(elements_[n - 1])) --n;
  if (n == 0) {
    for (Index i = 0; i < b.dim(); ++i) diag(i) = m(i, i).real();
    return diag;
  }
  for (std::size_t e = 0; e + 1 < n; ++e) apply_element(e, b, m, true, true);
  const auto& bs = std::get<BeamSplitter>(elements_[n - 1]);
  for (const auto& g : pair_groups(b, bs.mode_a, bs.mode_b)) {
    const CMatrix& u = element_unitary(n - 1, static_cast<int>(g.size()) - 1);
    const CMatrix sub = m(g, g);
    const CMatrix out = u * sub * u.adjoint();
    for (std::size_t j = 0; j < g.size(); ++j) diag(g[j]) = out(Index(j), Index(j)).real();
  }
  return diag;
}

}  // namespace mcobs
