#include "mcobs/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "mcobs/phase_space.hpp"
#include "mcobs/states.hpp"

namespace mcobs {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

bool VerifyReport::any_failed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::kFail) return true;
  return false;
}

bool VerifyReport::any_inconclusive() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::kInconclusive) return true;
  return false;
}

State random_state(std::uint64_t seed, int cutoff, int rank) {
  if (rank < 1) throw InvalidArgument("random_state: rank must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const FockTruncation t(cutoff, 1);
  CMatrix m(cutoff + 1, rank);
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) m(i, j) = cplx(g(rng), g(rng));
  if (rank == 1) return FockArray(t, m.col(0).normalized());
  CMatrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityOp(t, rho);
}

namespace {

const cplx I(0.0, 1.0);

class Suite {
 public:
  explicit Suite(const VerifyConfig& cfg) : cfg_(cfg) {}

  void run(const std::string& name, double tolerance, const std::function<double()>& f) {
    VerifyCheck c{name, CheckStatus::kPass, 0.0, tolerance, {}};
    try {
      c.residual = f();
      c.status = c.residual <= tolerance ? CheckStatus::kPass : CheckStatus::kFail;
    } catch (const Error& e) {
      c.status = e.code() == ErrorCode::kTailGate ? CheckStatus::kInconclusive : CheckStatus::kFail;
      c.residual = std::nan("");
      c.detail = e.what();
    }
    report_.checks.push_back(std::move(c));
  }

  const VerifyConfig& cfg() const { return cfg_; }
  VerifyReport take() { return std::move(report_); }

 private:
  VerifyConfig cfg_;
  VerifyReport report_;
};

GatedState gated(GatedState s, const VerifyConfig& cfg, const char* what) {
  if (s.tail.exceeds(cfg.tail_max)) {
    std::ostringstream os;
    os << what << ": tail mass " << s.tail.worst() << " exceeds " << cfg.tail_max << " at cutoff "
       << truncation_of(s.state).cutoff();
    throw TailGateError(os.str());
  }
  return s;
}

double variance_identity_lz(const State& s) {
  const auto ev = entropy_and_variance_lz(s);
  const double det = covariance_of(s).raw_moments().determinant();
  return std::abs(ev.distribution.second_moment() - 0.5 * (det - 0.25));
}

double variance_identity_m(const State& s) {
  const auto ev = entropy_and_variance_m(s);
  return std::abs(ev.variance - 0.5 * (covariance_of(s).det() - 0.25));
}

}  // namespace

VerifyReport run_verification(const VerifyConfig& cfg) {
  if (cfg.algebra_cutoff < 3 || cfg.cutoff < 1 || !(cfg.tol > 0.0) || !(cfg.tail_max > 0.0))
    throw InvalidArgument("verify: need algebra_cutoff >= 3, cutoff >= 1, tol > 0, tail_max > 0");
  Suite suite(cfg);
  const double tol = cfg.tol;
  const FockTruncation t2(cfg.algebra_cutoff, 2);
  // Three-mode boxes grow as (c+1)^3; the interior comparisons need only a few levels.
  const FockTruncation t3(std::min(cfg.algebra_cutoff, 7), 3);

  suite.run("L commutators", tol, [&] {
    const auto l = build_angular_components(t2);
    return std::max({interior_difference(commutator(l.l_x, l.l_y), I * l.l_z),
                     interior_difference(commutator(l.l_y, l.l_z), I * l.l_x),
                     interior_difference(commutator(l.l_z, l.l_x), I * l.l_y)});
  });
  suite.run("L^2 = L0(L0+1)", tol, [&] {
    const auto l = build_angular_components(t2);
    return interior_difference(l.l_sq, l.l_0 * (l.l_0 + ModeOperator::identity(t2)));
  });
  suite.run("M commutators", tol, [&] {
    const auto m = build_three_copy(t3);
    return std::max({interior_difference(commutator(m.m_x, m.m_y), 0.5 * I * m.m_z),
                     interior_difference(commutator(m.m_y, m.m_z), 0.5 * I * m.m_x),
                     interior_difference(commutator(m.m_z, m.m_x), 0.5 * I * m.m_y)});
  });
  suite.run("M squared sum", tol, [&] {
    const auto m = build_three_copy(t3);
    const ModeOperator sum = m.m_x * m.m_x + m.m_y * m.m_y + m.m_z * m.m_z;
    return interior_difference(sum, m_squared_sum_closed_form(t3));
  });
  suite.run("M forms agree", tol, [&] {
    const auto a = build_three_copy(t3, ThreeCopyForm::kModeOperators);
    const auto g = build_three_copy(t3, ThreeCopyForm::kGellMann);
    const auto q = build_three_copy(t3, ThreeCopyForm::kQuadratures);
    return std::max({interior_difference(a.m, g.m), interior_difference(a.m, q.m),
                     interior_difference(a.m_x, q.m_x), interior_difference(a.m_y, q.m_y),
                     interior_difference(a.m_z, q.m_z)});
  });
  suite.run("exchange symmetry", tol, [&] {
    const auto l = build_angular_components(t2);
    const ModeOperator p = exchange_operator(t2);
    return std::max({interior_difference(p * l.l_z * p, cplx(-1.0) * l.l_z, 0),
                     interior_difference(p * l.l_y * p, l.l_y, 0),
                     interior_difference(p * p, ModeOperator::identity(t2), 0)});
  });
  suite.run("operator table", tol, [&] {
    return verify_operator_table(t2, cfg.convention, tol).max_residual;
  });
  suite.run("circuit vs projector", 1e-10, [&] {
    double worst = 0.0;
    const State states[] = {fock_state(1, 4).state, random_state(cfg.seed, 6, 3)};
    for (const State& s : states) {
      worst = std::max(worst, circuit_vs_projector_lz(s).total_variation);
      worst = std::max(worst, circuit_vs_projector_m(s).total_variation);
    }
    return worst;
  });
  suite.run("variance identities", 1e-7, [&] {
    double worst = 0.0;
    for (int i = 0; i < cfg.random_states; ++i) {
      const State s = random_state(cfg.seed + 100 + static_cast<std::uint64_t>(i), 6, 1 + i % 3);
      worst = std::max({worst, variance_identity_lz(s), variance_identity_m(s)});
    }
    return worst;
  });
  suite.run("Fock |1> entropies", 1e-9, [&] {
    const State one = fock_state(1, 4).state;
    const double h_lz = entropy_and_variance_lz(one).entropy;
    const double h_m = entropy_and_variance_m(one).entropy;
    const double h_m_ref = -(5.0 / 9.0) * std::log(5.0 / 9.0) - (4.0 / 9.0) * std::log(2.0 / 9.0);
    return std::max(std::abs(h_lz - std::log(2.0)), std::abs(h_m - h_m_ref));
  });
  suite.run("squeezed vacuum saturates", 1e-5, [&] {
    MakeOptions opts{cfg.tail_max, false};
    const GatedState sq =
        gated(squeezed_vacuum(cfg.squeeze_r, cfg.cutoff, opts), cfg, "squeezed vacuum");
    const auto d = outcome_distribution_lz(sq.state);
    return std::max(1.0 - d.probability(0), d.entropy());
  });
  suite.run("displaced squeezed vacuum, H(M)", 1e-5, [&] {
    MakeOptions opts{cfg.tail_max, false};
    const int c = std::min(cfg.cutoff, 20);
    const GatedState s = gated(
        displaced_squeezed_thermal(cplx(0.5, 0.3), 0.5 * cfg.squeeze_r, 0.0, c, opts), cfg,
        "displaced squeezed vacuum");
    return outcome_distribution_m(s.state).entropy();
  });
  suite.run("thermal closed form", 1e-6, [&] {
    MakeOptions opts{cfg.tail_max, false};
    const GatedState th = gated(thermal_state(1.0, cfg.cutoff, opts), cfg, "thermal state");
    const double h = outcome_distribution_lz(th.state).entropy();
    const double nu = std::sqrt(covariance_of(th.state).det());
    return std::abs(h - gaussian_entropy_closed_forms(nu).h_lz);
  });
  suite.run("symplectic invariance of L_z", 1e-6, [&] {
    double worst = 0.0;
    const int big = std::max(cfg.cutoff, 30);
    for (int i = 0; i < 3; ++i) {
      const State s = random_state(cfg.seed + 200 + static_cast<std::uint64_t>(i), 4, 1);
      const State wide = with_cutoff(s, big);
      GatedState moved = apply_unitary(Squeeze{0, std::polar(0.25, 0.7 * i)}, wide, cfg.tail_max);
      moved = apply_unitary(PhaseRotation{0, 0.4 + i}, normalized(moved.state), cfg.tail_max);
      if (moved.tail_warning) gated(moved, cfg, "squeezed random state");
      worst = std::max(worst, total_variation(outcome_distribution_lz(s),
                                              outcome_distribution_lz(normalized(moved.state))));
    }
    return worst;
  });
  suite.run("displacement invariance of M", 1e-6, [&] {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      const State s = random_state(cfg.seed + 300 + static_cast<std::uint64_t>(i), 4, 1);
      const auto r = displacement_invariance_check(s, std::polar(0.6, 1.1 * i), {},
                                                   std::max(cfg.cutoff, 30));
      if (r.tail_warning && r.displaced_tail.exceeds(cfg.tail_max))
        throw TailGateError("displaced state: tail mass above limit");
      worst = std::max({worst, r.total_variation, r.image_error});
    }
    return worst;
  });
  return suite.take();
}

}  // namespace mcobs
