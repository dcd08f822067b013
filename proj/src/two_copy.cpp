#include "mcobs/two_copy.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include <Eigen/Eigenvalues>

namespace mcobs {

namespace {

const cplx I(0.0, 1.0);

void require_two_modes(const FockTruncation& t) {
  if (t.modes() != 2) throw DimensionError("two-copy operators need a two-mode truncation");
}

double binomial(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

}  // namespace

CMatrix lx_single_particle() {
  CMatrix h(2, 2);
  h << 0.5, 0.0, 0.0, -0.5;
  return h;
}

CMatrix ly_single_particle() {
  CMatrix h(2, 2);
  h << 0.0, 0.5, 0.5, 0.0;
  return h;
}

CMatrix lz_single_particle() {
  CMatrix h(2, 2);
  h << 0.0, -0.5 * I, 0.5 * I, 0.0;
  return h;
}

CMatrix lplus_single_particle() { return lx_single_particle() + I * ly_single_particle(); }

AngularComponents build_angular_components(const FockTruncation& t) {
  require_two_modes(t);
  const ModeOperator a1 = annihilation(t, 0), a2 = annihilation(t, 1);
  const ModeOperator c1 = creation(t, 0), c2 = creation(t, 1);
  const ModeOperator n1 = number(t, 0), n2 = number(t, 1);
  const ModeOperator lx(t, (cplx(0.5) * (n1 - n2)).matrix(), true);
  const ModeOperator ly(t, (cplx(0.5) * (c1 * a2 + a1 * c2)).matrix(), true);
  const ModeOperator lz(t, (0.5 * I * (a1 * c2 - c1 * a2)).matrix(), true);
  const ModeOperator lp = lx + I * ly;
  const ModeOperator lm = lx - I * ly;
  const ModeOperator l0(t, (cplx(0.5) * (n1 + n2)).matrix(), true);
  const ModeOperator lsq(t, (lx * lx + ly * ly + lz * lz).matrix(), true);
  return {lx, ly, lz, lp, lm, lsq, l0};
}

AngularAlternativeForms angular_alternative_forms(const FockTruncation& t) {
  require_two_modes(t);
  const ModeOperator x1 = quadrature_x(t, 0), x2 = quadrature_x(t, 1);
  const ModeOperator p1 = quadrature_p(t, 0), p2 = quadrature_p(t, 1);
  AngularAlternativeForms f{
      bilinear_form(t, lx_single_particle()),
      bilinear_form(t, ly_single_particle()),
      bilinear_form(t, lz_single_particle()),
      cplx(0.25) * (x1 * x1 + p1 * p1 - x2 * x2 - p2 * p2),
      cplx(0.5) * (x1 * x2 + p1 * p2),
      cplx(0.5) * (x1 * p2 - p1 * x2),
  };
  return f;
}

ModeOperator exchange_operator(const FockTruncation& t) {
  require_two_modes(t);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Index i = 0; i < t.dim(); ++i) {
    const Occupation o = t.occupation(i);
    trip.emplace_back(t.flat_index({o[1], o[0], 0}), i, 1.0);
  }
  SparseCMatrix m(t.dim(), t.dim());
  m.setFromTriplets(trip.begin(), trip.end());
  return ModeOperator(t, std::move(m), true);
}

// ---------------------------------------------------------------------------

CVector fix_phase(const CVector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) return v * (std::abs(v(i)) / v(i));
  }
  return v;
}

CVector SectorEigenbasis::vector_for(int tm) const {
  if (std::abs(tm) > twice_l || (twice_l - tm) % 2 != 0)
    throw InvalidArgument("m = " + std::to_string(tm) + "/2 is not in the l = " +
                          std::to_string(twice_l) + "/2 multiplet");
  return vectors.col((tm + twice_l) / 2);
}

FockArray SectorEigenbasis::embedded(int tm, const FockTruncation& t) const {
  require_two_modes(t);
  return embed_sector_vector(vector_for(tm), SectorBasis(2, twice_l), t);
}

SectorEigenbasis sector_eigenbasis(int twice_l) {
  if (twice_l < 0) throw InvalidArgument("twice_l must be >= 0");
  const SectorSpectrum s = diagonalize_sector(lz_single_particle(), SectorBasis(2, twice_l));
  SectorEigenbasis out;
  out.twice_l = twice_l;
  out.vectors = s.vectors;
  out.twice_m = s.twice_m;
  for (std::size_t j = 0; j < s.twice_m.size(); ++j) {
    if (s.twice_m[j] != -twice_l + 2 * static_cast<int>(j))
      throw InvariantError("L_z spectrum on a sector is not -l..l");
    out.vectors.col(Index(j)) = fix_phase(out.vectors.col(Index(j)));
  }
  return out;
}

CVector closed_form_lowest_weight(int twice_l) {
  if (twice_l < 0) throw InvalidArgument("twice_l must be >= 0");
  const int n = twice_l;
  CVector v = CVector::Zero(n + 1);
  // k runs to floor(l - 1/2); the middle term |l,l> exists for integer l.
  const int kmax = (n - 1) / 2;
  const cplx i_pow_n = std::pow(I, n);
  for (int k = 0; k <= kmax && n > 0; ++k) {
    const cplx c = std::pow(I, k) * std::sqrt(binomial(n, k));
    v(k) += c;
    v(n - k) += c * double(k % 2 == 0 ? 1 : -1) * i_pow_n;
  }
  if (n % 2 == 0) v(n / 2) += std::pow(I, n / 2) * std::sqrt(binomial(n, n / 2));
  return v / v.norm();
}

CVector closed_form_m0(int twice_l) {
  if (twice_l < 0 || twice_l % 2 != 0)
    throw InvalidArgument("the m = 0 closed form needs integer l");
  const int l = twice_l / 2;
  CVector v = CVector::Zero(twice_l + 1);
  if (l % 2 == 0) {
    const double beta = std::sqrt(double_factorial(2 * l) * double_factorial(l - 1) *
                                  double_factorial(l - 1) /
                                  (double_factorial(l) * double_factorial(2 * l - 1) *
                                   double_factorial(l)));
    v(l) += beta;
  }
  // i runs to floor(l/2 - 1/2).
  for (int i = 0; 2 * i + 1 <= l; ++i) {
    const double alpha = std::sqrt(
        double_factorial(2 * l) * double_factorial(2 * l - 2 * i - 1) * double_factorial(2 * i - 1) /
        (double_factorial(2 * l - 2 * i) * double_factorial(2 * l - 1) * double_factorial(2 * i)));
    v(2 * i) += alpha;
    v(twice_l - 2 * i) += alpha;
  }
  return v / v.norm();
}

std::vector<CVector> raise_ladder(const CVector& lowest, int twice_l) {
  if (lowest.size() != twice_l + 1) throw DimensionError("lowest-weight vector has wrong length");
  const SectorBasis b(2, twice_l);
  const CMatrix lp = sector_operator(lplus_single_particle(), b);
  std::vector<CVector> out{lowest};
  const double l = 0.5 * twice_l;
  for (int j = 0; j < twice_l; ++j) {
    const double m = -l + j;
    out.push_back(lp * out.back() / std::sqrt(l * (l + 1) - m * (m + 1)));
  }
  return out;
}

const SpectrumProvider& lz_spectrum_provider() {
  static const SpectrumProvider provider = [] {
    auto cache = std::make_shared<std::map<int, SectorSpectrum>>();
    auto mu = std::make_shared<std::mutex>();
    return SpectrumProvider([cache, mu](const SectorBasis& b) -> const SectorSpectrum& {
      if (b.modes() != 2) throw DimensionError("L_z spectra live on two-mode sectors");
      std::lock_guard<std::mutex> lock(*mu);
      if (auto it = cache->find(b.total()); it != cache->end()) return it->second;
      const SectorEigenbasis e = sector_eigenbasis(b.total());
      return cache->emplace(b.total(), SectorSpectrum{e.vectors, e.twice_m}).first->second;
    });
  }();
  return provider;
}

OutcomeDistribution outcome_distribution_lz(const State& s, const MultiCopyOptions& opts) {
  return spectral_distribution(s, 2, lz_spectrum_provider(), opts);
}

EntropyVariance entropy_and_variance_lz(const State& s, const MultiCopyOptions& opts) {
  EntropyVariance out{outcome_distribution_lz(s, opts)};
  out.entropy = out.distribution.entropy();
  out.variance = out.distribution.variance();
  return out;
}

}  // namespace mcobs
