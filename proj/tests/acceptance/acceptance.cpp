// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Expected values come from closed forms or small hand-built matrices written
// out here, not from the library's own helpers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mcobs/circuits.hpp"
#include "mcobs/phase_space.hpp"
#include "mcobs/states.hpp"

using namespace mcobs;

namespace {

const cplx I(0.0, 1.0);

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

int g_failed = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.note.precision(8);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= budget_s) {
    o.ok = false;
    o.note << " [runtime " << secs << " s over " << budget_s << " s]";
  }
  g_failed += !o.ok;
  std::printf("%s  %2d  %-34s %7.2fs %s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.note.str().c_str());
  std::fflush(stdout);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double entropy_of(const std::map<int, double>& p) {
  double h = 0.0;
  for (const auto& [k, v] : p) h -= xlogx(std::max(v, 0.0));
  return h;
}

double tv(const std::map<int, double>& a, const std::map<int, double>& b) {
  std::map<int, double> d = a;
  for (const auto& [k, v] : b) d[k] -= v;
  double s = 0.0;
  for (const auto& [k, v] : d) s += std::abs(v);
  return 0.5 * s;
}

double e_closed(double n) { return n == 0.0 ? 0.0 : -(2.0 * n * (n + 1.0) / (2.0 * n + 1.0)) * std::log(n / (n + 1.0)); }

/// Entropy of the two-copy observable for a Gaussian state with symplectic eigenvalue nu.
double h_gaussian(double nu) { return std::log(2.0 * nu) + e_closed(nu - 0.5); }

/// L_z on the two-mode sector n1 + n2 = K in the basis |j, K - j>, j = 0..K,
/// from L_z = (i/2)(a1 a2^dag - a1^dag a2).
CMatrix lz_sector(int k) {
  CMatrix m = CMatrix::Zero(k + 1, k + 1);
  for (int j = 0; j < k; ++j) {
    const double amp = 0.5 * std::sqrt((j + 1.0) * (k - j));
    m(j + 1, j) = -I * amp;
    m(j, j + 1) = I * amp;
  }
  return m;
}

/// Moments straight from the density matrix: <a>, <a^2>, <a^dag a>.
struct Moments {
  cplx a, a2;
  double n;
};

Moments moments_of(const CMatrix& rho) {
  Moments m{0.0, 0.0, 0.0};
  const Index d = rho.rows();
  for (Index k = 0; k < d; ++k) {
    m.n += k * rho(k, k).real();
    if (k + 1 < d) m.a += std::sqrt(double(k + 1)) * rho(k, k + 1);
    if (k + 2 < d) m.a2 += std::sqrt(double((k + 1) * (k + 2))) * rho(k, k + 2);
  }
  return m;
}

/// det of the centered covariance matrix.
double det_gamma(const CMatrix& rho) {
  const Moments m = moments_of(rho);
  const double xx = m.a2.real() + m.n + 0.5, pp = -m.a2.real() + m.n + 0.5, xp = m.a2.imag();
  const double mx = std::sqrt(2.0) * m.a.real(), mp = std::sqrt(2.0) * m.a.imag();
  const double cxx = xx - mx * mx, cpp = pp - mp * mp, cxp = xp - mx * mp;
  return cxx * cpp - cxp * cxp;
}

CMatrix density_of(const State& s) { return to_density(s).matrix(); }

CMatrix random_ginibre(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

State random_state(std::mt19937_64& rng, int cutoff, int rank) {
  const FockTruncation t(cutoff, 1);
  const CMatrix g = random_ginibre(rng, cutoff + 1, rank);
  if (rank == 1) return FockArray(t, g.col(0).normalized());
  CMatrix rho = g * g.adjoint();
  return DensityOp(t, rho / rho.trace().real());
}

/// Random state with <a> = 0: support on a single parity, or a mixture of an
/// even-parity and an odd-parity state.
State random_centered_state(std::mt19937_64& rng, int cutoff, bool mixed) {
  const FockTruncation t(cutoff, 1);
  const auto parity_vector = [&](int parity) {
    CVector v = random_ginibre(rng, cutoff + 1, 1).col(0);
    for (int n = 0; n <= cutoff; ++n)
      if (n % 2 != parity) v(n) = 0.0;
    return CVector(v.normalized());
  };
  if (!mixed) return FockArray(t, parity_vector(static_cast<int>(rng() % 2)));
  const CVector e = parity_vector(0), o = parity_vector(1);
  const double w = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
  return DensityOp(t, w * e * e.adjoint() + (1.0 - w) * o * o.adjoint());
}

double overlap(const CVector& a, const CVector& b) { return std::norm(a.normalized().dot(b.normalized())); }

}  // namespace

int main() {
  std::printf("criterion                                     time   notes\n");

  criterion(1, "Fock |1>: H(L_z) = ln 2", 1.0, [](Outcome& o) {
    const State one = fock_state(1, 4).state;
    const auto circuit = circuit_distribution(fig1_two_copy(), one);
    const auto projector = outcome_distribution_lz(one);
    // Oracle: |1,1> is j = 1 of the K = 2 sector; project onto eigenvectors of the hand-built L_z.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(lz_sector(2));
    std::map<int, double> ref;
    CVector psi = CVector::Zero(3);
    psi(1) = 1.0;
    for (int c = 0; c < 3; ++c) ref[static_cast<int>(std::lround(2.0 * es.eigenvalues()(c)))] += std::norm(es.eigenvectors().col(c).dot(psi));
    const double err = std::abs(circuit.entropy() - std::log(2.0));
    const double err_oracle = std::abs(entropy_of(ref) - std::log(2.0));
    const double t = total_variation(circuit, projector);
    o.note << "|H-ln2|=" << err << " TV(circuit,projector)=" << t << " TV(oracle)=" << tv(projector.probabilities(), ref);
    o.require(err < 1e-9 && err_oracle < 1e-12, "entropy");
    o.require(t < 1e-10, "routes agree");
    o.require(tv(projector.probabilities(), ref) < 1e-10, "oracle distribution");
  });

  criterion(2, "mixture of |0> and |1>", 1.0, [](Outcome& o) {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double a = 0.1 * i;
      CMatrix rho = CMatrix::Zero(5, 5);
      rho(0, 0) = a;
      rho(1, 1) = 1.0 - a;
      const double h = outcome_distribution_lz(DensityOp(FockTruncation(4, 1), rho)).entropy();
      const double ref = (1 - a) * (1 - a) * std::log(2.0) - 2 * xlogx(a) - 2 * xlogx(1 - a);
      worst = std::max(worst, std::abs(h - ref));
    }
    o.note << "max |H-formula|=" << worst;
    o.require(worst < 1e-9, "formula");
  });

  criterion(3, "thermal geometric law", 10.0, [](Outcome& o) {
    double worst_tv = 0.0, worst_h = 0.0, worst_tail = 0.0;
    for (double n : {0.25, 0.5, 1.0, 2.0}) {
      const double q = n / (n + 1.0);
      int cutoff = 8;
      GatedState th = thermal_state(n, cutoff);
      while (th.tail.worst() >= 1e-8) th = thermal_state(n, ++cutoff);
      const auto d = outcome_distribution_lz(th.state);
      std::map<int, double> law;
      // P(m) = q^{2|m|} / (2n + 1) on half-integer m, i.e. q^{|2m|} keyed by 2m.
      for (int k = -2 * cutoff; k <= 2 * cutoff; ++k) law[k] = std::pow(q, std::abs(k)) / (2 * n + 1);
      worst_tv = std::max(worst_tv, tv(d.probabilities(), law));
      worst_h = std::max(worst_h, std::abs(d.entropy() - (std::log(2 * n + 1) + e_closed(n))));
      worst_tail = std::max(worst_tail, th.tail.worst());
    }
    o.note << "max TV=" << worst_tv << " max |dH|=" << worst_h << " max tail=" << worst_tail;
    o.require(worst_tv < 1e-6, "law");
    o.require(worst_h < 1e-6, "entropy");
    o.require(worst_tail < 1e-8, "tail");
  });

  criterion(4, "variance identities", 60.0, [](Outcome& o) {
    std::mt19937_64 rng(20240501);
    double worst_lz = 0.0, worst_m = 0.0;
    for (int i = 0; i < 50; ++i) {
      const State c = random_centered_state(rng, 10, i % 2 == 1);
      const auto lz = outcome_distribution_lz(c);
      worst_lz = std::max(worst_lz, std::abs(lz.second_moment() - 0.5 * (det_gamma(density_of(c)) - 0.25)));

      // Arbitrary states, half of them pushed off-center by a displacement.
      State s = random_state(rng, i % 2 == 0 ? 10 : 6, 1 + i % 3);
      if (i % 2 == 1) {
        const cplx alpha = std::polar(0.5, 0.37 * i);
        const GatedState moved = apply_unitary(Displace{0, alpha}, with_cutoff(s, 10), 1.0);
        s = normalized(moved.state);
      }
      const auto m = outcome_distribution_m(s);
      worst_m = std::max(worst_m, std::abs(m.variance() - 0.5 * (det_gamma(density_of(s)) - 0.25)));
    }
    o.note << "max L_z residual=" << worst_lz << " max M residual=" << worst_m;
    o.require(worst_lz < 1e-7, "L_z identity");
    o.require(worst_m < 1e-6, "M identity");
  });

  criterion(5, "minimum-uncertainty saturation", 60.0, [](Outcome& o) {
    double worst_p0 = 0.0, worst_hlz = 0.0, worst_hm = 0.0, worst_tail = 0.0;
    for (double r : {0.1, 0.3, 0.5}) {
      for (double phi : {0.0, 1.3}) {
        const GatedState sq = squeezed_vacuum(std::polar(r, phi), 40);
        const auto d = outcome_distribution_lz(sq.state);
        worst_p0 = std::max(worst_p0, 1.0 - d.probability(0));
        worst_hlz = std::max(worst_hlz, d.entropy());
        worst_tail = std::max(worst_tail, sq.tail.worst());
      }
    }
    MultiCopyOptions pure_route;
    pure_route.method = MultiCopyMethod::kPureTerms;
    // At cutoff 20 the 1e-8 tail gate allows r up to about 0.2 when |alpha| = 1
    // points along the anti-squeezed quadrature.
    const std::pair<cplx, cplx> cases[] = {{cplx(0.0, 1.0), cplx(0.2, 0.0)},
                                           {cplx(1.0, 0.0), cplx(0.2, 0.0)},
                                           {std::polar(1.0, 2.0), std::polar(0.2, -0.8)},
                                           {cplx(0.4, -0.5), cplx(0.0, 0.3)}};
    for (const auto& [alpha, s] : cases) {
      const GatedState st = displaced_squeezed_thermal(alpha, s, 0.0, 20);
      worst_hm = std::max(worst_hm, outcome_distribution_m(st.state, MRoute::kCircuit, pure_route).entropy());
      worst_tail = std::max(worst_tail, st.tail.worst());
    }
    o.note << "max 1-p0=" << worst_p0 << " max H(L_z)=" << worst_hlz << " max H(M)=" << worst_hm
           << " max tail=" << worst_tail;
    o.require(worst_p0 <= 1e-6, "p0");
    o.require(worst_hlz < 1e-5, "H(L_z)");
    o.require(worst_hm < 1e-5, "H(M)");
    o.require(worst_tail < 1e-8, "tail");
  });

  criterion(6, "operator algebra at cutoff 10", 30.0, [](Outcome& o) {
    const FockTruncation t2(10, 2), t3(10, 3);
    const auto l = build_angular_components(t2);
    const ModeOperator id2 = ModeOperator::identity(t2);
    const double r_l = std::max({interior_difference(commutator(l.l_x, l.l_y), I * l.l_z),
                                 interior_difference(commutator(l.l_y, l.l_z), I * l.l_x),
                                 interior_difference(commutator(l.l_z, l.l_x), I * l.l_y),
                                 interior_difference(l.l_x * l.l_x + l.l_y * l.l_y + l.l_z * l.l_z,
                                                     l.l_0 * (l.l_0 + id2))});
    const auto m = build_three_copy(t3);
    const auto g = build_three_copy(t3, ThreeCopyForm::kGellMann);
    const ModeOperator n = total_number(t3);
    ModeOperator pairs = ModeOperator::zero(t3);
    for (int k = 0; k < 3; ++k) pairs = pairs + creation(t3, k) * creation(t3, k);
    const ModeOperator pairs_down = pairs.adjoint();
    const ModeOperator sq_sum = cplx(0.25) * (n * (n + ModeOperator::identity(t3)) - pairs * pairs_down);
    const double r_m = std::max({interior_difference(commutator(m.m_x, m.m_y), 0.5 * I * m.m_z),
                                 interior_difference(commutator(m.m_y, m.m_z), 0.5 * I * m.m_x),
                                 interior_difference(commutator(m.m_z, m.m_x), 0.5 * I * m.m_y),
                                 interior_difference(m.m_x * m.m_x + m.m_y * m.m_y + m.m_z * m.m_z, sq_sum)});
    const double r_g = std::max({interior_difference(m.m_x, g.m_x), interior_difference(m.m_y, g.m_y),
                                 interior_difference(m.m_z, g.m_z), interior_difference(m.m, g.m)});
    const auto table = verify_operator_table(t2);
    o.note << "L=" << r_l << " M=" << r_m << " Gell-Mann=" << r_g << " table=" << table.max_residual << " ("
           << table.checks.size() << " entries)";
    o.require(r_l < 1e-9, "L algebra");
    o.require(r_m < 1e-9, "M algebra");
    o.require(r_g < 1e-9, "Gell-Mann form");
    o.require(table.passed && table.max_residual < 1e-9, "operator table");
  });

  criterion(7, "L_z eigenbases for l <= 6", 10.0, [](Outcome& o) {
    double worst = 1.0, worst_explicit = 1.0;
    for (int k = 0; k <= 12; ++k) {
      const auto ladder = raise_ladder(closed_form_lowest_weight(k), k);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(lz_sector(k));
      const SectorEigenbasis lib = sector_eigenbasis(k);
      for (int c = 0; c <= k; ++c) {
        // Eigenvalues of the hand-built sector matrix are -k/2, ..., k/2 in order.
        const CVector ref = es.eigenvectors().col(c);
        worst = std::min({worst, overlap(ladder[static_cast<std::size_t>(c)], ref), overlap(lib.vector_for(2 * c - k), ref)});
      }
      if (k % 2 == 0) worst = std::min(worst, overlap(closed_form_m0(k), es.eigenvectors().col(k / 2)));
    }
    // Explicit vectors, basis |j, K - j> ordered by j.
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<std::pair<int, CVector>> explicit_vectors = {
        {0, (CVector(1) << 1.0).finished()},
        {-1, (CVector(2) << r, I * r).finished()},
        {1, (CVector(2) << r, -I * r).finished()},
        {-2, (CVector(3) << -0.5, -I * r, 0.5).finished()},
        {0, (CVector(3) << r, 0.0, r).finished()},
        {2, (CVector(3) << -0.5, I * r, 0.5).finished()}};
    for (const auto& [twice_m, v] : explicit_vectors) {
      const int k = static_cast<int>(v.size()) - 1;
      worst_explicit = std::min(worst_explicit, overlap(sector_eigenbasis(k).vector_for(twice_m), v));
      worst_explicit = std::min(worst_explicit, 1.0 - (lz_sector(k) * v - 0.5 * twice_m * v).norm());
    }
    o.note << "min overlap=" << worst << " explicit l<=1 min overlap=" << worst_explicit;
    o.require(worst > 1.0 - 1e-9, "closed forms and ladder");
    o.require(worst_explicit > 1.0 - 1e-12, "explicit vectors");
  });

  criterion(8, "Gaussian invariance", 120.0, [](Outcome& o) {
    std::mt19937_64 rng(8128);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_lz = 0.0, worst_m = 0.0, worst_tail = 0.0;
    const int big = 40;
    for (int i = 0; i < 20; ++i) {
      const State s = random_state(rng, 4, 1 + i % 2);
      const double theta = 2.0 * M_PI * u(rng);
      const cplx sq = std::polar(0.3 * u(rng), 2.0 * M_PI * u(rng));
      const cplx alpha = std::polar(0.8 * u(rng), 2.0 * M_PI * u(rng));
      GatedState g = apply_unitary(Squeeze{0, sq}, with_cutoff(s, big));
      worst_tail = std::max(worst_tail, g.tail.worst());
      g = apply_unitary(PhaseRotation{0, theta}, normalized(g.state));
      worst_tail = std::max(worst_tail, g.tail.worst());
      const State symplectic = normalized(g.state);
      worst_lz = std::max(worst_lz, total_variation(outcome_distribution_lz(s), outcome_distribution_lz(symplectic)));

      const GatedState d = apply_unitary(Displace{0, alpha}, symplectic);
      worst_tail = std::max(worst_tail, d.tail.worst());
      worst_m = std::max(worst_m, total_variation(outcome_distribution_m(s), outcome_distribution_m(normalized(d.state))));
    }
    o.note << "max TV L_z=" << worst_lz << " max TV M=" << worst_m << " max tail=" << worst_tail;
    o.require(worst_tail < 1e-8, "tail gate");
    o.require(worst_lz < 1e-6, "L_z invariance");
    o.require(worst_m < 1e-6, "M invariance");
  });

  criterion(9, "Gaussian states: H(M) = H(L_z)", 120.0, [](Outcome& o) {
    struct Case {
      const char* label;
      GatedState state;
    };
    const Case cases[] = {{"thermal 0.5", thermal_state(0.5, 30)},
                          {"thermal 1", thermal_state(1.0, 30)},
                          {"squeezed thermal 0.2/0.2", displaced_squeezed_thermal(0.0, 0.2, 0.2, 20)},
                          {"squeezed thermal 0.3/0.1", displaced_squeezed_thermal(0.0, std::polar(0.3, 0.6), 0.1, 20)}};
    double worst_gap = 0.0, worst_closed = 0.0, worst_tail = 0.0;
    for (const auto& c : cases) {
      const double h_lz = outcome_distribution_lz(c.state.state).entropy();
      const double h_m = outcome_distribution_m(c.state.state).entropy();
      const double closed = h_gaussian(std::sqrt(det_gamma(density_of(c.state.state))));
      worst_gap = std::max(worst_gap, std::abs(h_m - h_lz));
      worst_closed = std::max({worst_closed, std::abs(h_lz - closed), std::abs(h_m - closed)});
      worst_tail = std::max(worst_tail, c.state.tail.worst());
    }
    o.note << "max |H(M)-H(L_z)|=" << worst_gap << " max |H-closed form|=" << worst_closed
           << " max tail=" << worst_tail;
    o.require(worst_gap < 1e-5, "equality");
    o.require(worst_closed < 1e-5, "closed form");
    o.require(worst_tail < 1e-8, "tail");
  });

  criterion(10, "Fock |1>: H(M) differs from ln 2", 60.0, [](Outcome& o) {
    const State one = fock_state(1, 4).state;
    const double h_circuit = outcome_distribution_m(one, MRoute::kCircuit).entropy();
    const double h_spectral = outcome_distribution_m(one, MRoute::kDiagonalization).entropy();
    // Small-cutoff diagonalization: M on the box of cutoff 3, restricted to N = 3,
    // read against |1,1,1>.
    const FockTruncation t(3, 3);
    const CMatrix m = build_three_copy(t).m.dense();
    std::vector<Index> sector;
    for (Index k = 0; k < t.dim(); ++k)
      if (t.total_photons(k) == 3) sector.push_back(k);
    CMatrix block(sector.size(), sector.size());
    for (std::size_t i = 0; i < sector.size(); ++i)
      for (std::size_t j = 0; j < sector.size(); ++j) block(i, j) = m(sector[i], sector[j]);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(block);
    const Index target = t.flat_index({1, 1, 1});
    std::map<int, double> p;
    for (Index c = 0; c < es.eigenvectors().cols(); ++c) {
      const auto pos = std::find(sector.begin(), sector.end(), target) - sector.begin();
      p[static_cast<int>(std::lround(2.0 * es.eigenvalues()(c)))] += std::norm(es.eigenvectors()(pos, c));
    }
    const double h_diag = entropy_of(p);
    const double pinned = 0.9950269901795212;
    o.note << "H(M) circuit=" << h_circuit << " spectral=" << h_spectral << " box diagonalization=" << h_diag
           << " ln2-H=" << std::log(2.0) - h_circuit;
    o.require(std::abs(h_circuit - h_diag) < 1e-6 && std::abs(h_spectral - h_diag) < 1e-6, "routes agree");
    o.require(std::abs(h_circuit - std::log(2.0)) > 1e-3, "separation");
    o.require(std::abs(h_circuit - pinned) < 1e-12, "pinned value");
  });

  std::printf("%d of 10 criteria passed\n", 10 - g_failed);
  return g_failed == 0 ? 0 : 1;
}
