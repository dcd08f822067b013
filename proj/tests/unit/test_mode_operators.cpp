#include <doctest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "mcobs/mode_operators.hpp"

using namespace mcobs;

namespace {

const cplx I(0.0, 1.0);

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("canonical commutators hold away from the cutoff") {
  const FockTruncation t(8, 2);
  for (int m = 0; m < 2; ++m) {
    const ModeOperator a = annihilation(t, m);
    const ModeOperator ad = creation(t, m);
    CHECK(interior_difference(commutator(a, ad), ModeOperator::identity(t)) < 1e-12);
    const ModeOperator xp = commutator(quadrature_x(t, m), quadrature_p(t, m));
    CHECK(interior_difference(xp, I * ModeOperator::identity(t)) < 1e-12);
    CHECK(interior_difference(ad * a, number(t, m), 0) < 1e-12);
  }
  const ModeOperator cross = commutator(annihilation(t, 0), creation(t, 1));
  CHECK(interior_difference(cross, ModeOperator::zero(t), 0) < 1e-15);
  CHECK_THROWS_AS(annihilation(t, 2), Error);
}

TEST_CASE("ladder matrix elements") {
  const FockTruncation t(5, 1);
  const CMatrix a = annihilation(t, 0).dense();
  for (int n = 1; n <= 5; ++n) CHECK(std::abs(a(n - 1, n) - std::sqrt(double(n))) < 1e-15);
  const CMatrix x = quadrature_x(t, 0).dense();
  CHECK(std::abs(x(0, 1) - std::sqrt(0.5)) < 1e-15);
  CHECK(quadrature_p(t, 0).hermitian());
}

TEST_CASE("beam splitter mode matrices") {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix refl(2, 2);
  refl << r, r, r, -r;
  CHECK((mode_matrix(BeamSplitter{0, 1, 0.5}, 2) - refl).norm() < 1e-15);

  const double c = std::sqrt(0.3), s = std::sqrt(0.7);
  CMatrix rot(2, 2);
  rot << c, s, -s, c;
  CHECK((mode_matrix(BeamSplitter{0, 1, 0.3, BeamSplitterConvention::kRotation}, 2) - rot).norm() <
        1e-15);

  CMatrix phase = CMatrix::Identity(2, 2);
  phase(1, 1) = -I;
  CHECK((mode_matrix(PhaseRotation{1, std::numbers::pi / 2}, 2) - phase).norm() < 1e-15);

  CHECK_THROWS_AS(mode_matrix(Squeeze{0, 0.1}, 1), Error);
  CHECK_THROWS_AS(validate(BeamSplitter{0, 0, 0.5}, 2), Error);
  CHECK_THROWS_AS(validate(BeamSplitter{0, 1, 1.5}, 2), Error);
}

TEST_CASE("two beam splitters build the symmetric three-mode combination") {
  const std::vector<GaussianUnitarySpec> stage{BeamSplitter{0, 1, 0.5},
                                               BeamSplitter{0, 2, 2.0 / 3.0}};
  const CMatrix t = compose_circuit_mode_matrix(stage, 3);
  const double r3 = 1.0 / std::sqrt(3.0), r2 = 1.0 / std::sqrt(2.0), r6 = 1.0 / std::sqrt(6.0);
  CMatrix expected(3, 3);
  expected << r3, r3, r3, r2, -r2, 0, r6, r6, -2 * r6;
  CHECK((t - expected).norm() < 1e-14);
}

TEST_CASE("truncated passive unitaries act as their mode matrices") {
  const FockTruncation t(5, 2);
  for (const GaussianUnitarySpec spec :
       {GaussianUnitarySpec{BeamSplitter{0, 1, 0.3}},
        GaussianUnitarySpec{BeamSplitter{0, 1, 0.8, BeamSplitterConvention::kRotation}},
        GaussianUnitarySpec{PhaseRotation{1, 0.7}}}) {
    const CMatrix u = unitary_matrix(spec, t);
    CHECK((u.adjoint() * u - CMatrix::Identity(t.dim(), t.dim())).norm() < 1e-12);
    const CMatrix tm = mode_matrix(spec, 2);
    for (int i = 0; i < 2; ++i) {
      const CMatrix lhs = u.adjoint() * annihilation(t, i).dense() * u;
      CMatrix rhs = CMatrix::Zero(t.dim(), t.dim());
      for (int j = 0; j < 2; ++j) rhs += tm(i, j) * annihilation(t, j).dense();
      // Total photon number is conserved, so sectors with N <= cutoff are exact.
      CHECK(max_abs_difference_on(lhs, rhs, t, TotalAtMost{2, 5}) < 1e-12);
    }
  }
}

TEST_CASE("expm_action agrees with a dense matrix exponential") {
  const FockTruncation t(6, 1);
  const ModeOperator g = generator(Squeeze{0, cplx(0.3, 0.2)}, t);
  const CMatrix dense = (-I * g.dense()).exp();
  const CVector v = CVector::Ones(t.dim()) / std::sqrt(double(t.dim()));
  CHECK((expm_action(g.matrix(), -I, v) - dense * v).norm() < 1e-12);
}

TEST_CASE("displacement of vacuum has Poisson amplitudes") {
  const cplx alpha(0.6, -0.4);
  const FockTruncation t(40, 1);
  const GatedState out = apply_unitary(Displace{0, alpha}, FockArray::vacuum(t));
  const auto& psi = std::get<FockArray>(out.state);
  for (int n = 0; n <= 12; ++n) {
    const cplx expected =
        std::exp(-std::norm(alpha) / 2.0) * std::pow(alpha, n) / std::sqrt(factorial(n));
    CHECK(std::abs(psi.amplitudes()(n) - expected) < 1e-12);
  }
  CHECK_FALSE(out.tail_warning);
  CHECK(std::abs(expectation(annihilation(t, 0), out.state) - alpha) < 1e-12);
}

TEST_CASE("squeezed vacuum amplitudes and moments") {
  const double r = 0.5, phi = 0.8;
  const cplx s = std::polar(r, phi);
  const FockTruncation t(60, 1);
  const GatedState out = apply_unitary(Squeeze{0, s}, FockArray::vacuum(t));
  const auto& psi = std::get<FockArray>(out.state);
  for (int n = 0; n <= 8; ++n) {
    const cplx expected = std::pow(-std::polar(std::tanh(r), phi), n) *
                          std::sqrt(factorial(2 * n)) / (std::pow(2.0, n) * factorial(n)) /
                          std::sqrt(std::cosh(r));
    CHECK(std::abs(psi.amplitudes()(2 * n) - expected) < 1e-12);
    CHECK(std::abs(psi.amplitudes()(2 * n + 1)) < 1e-14);
  }
  const ModeOperator a = annihilation(t, 0);
  CHECK(std::abs(expectation(a * a, out.state) + std::polar(std::sinh(r) * std::cosh(r), phi)) <
        1e-10);
  CHECK(std::abs(expectation(number(t, 0), out.state) - std::sinh(r) * std::sinh(r)) < 1e-10);
}

TEST_CASE("phase rotation multiplies n-photon amplitudes by exp(-i n theta)") {
  const FockTruncation t(4, 1);
  const GatedState out = apply_unitary(PhaseRotation{0, 0.4}, FockArray::basis(t, {3, 0, 0}));
  CHECK(std::abs(std::get<FockArray>(out.state).amplitude({3, 0, 0}) - std::exp(-I * 1.2)) < 1e-13);
}

TEST_CASE("density evolution matches pure evolution") {
  const FockTruncation t(10, 2);
  CVector v = CVector::Zero(t.dim());
  v(t.flat_index({1, 0, 0})) = 0.6;
  v(t.flat_index({0, 2, 0})) = cplx(0.0, 0.8);
  const FockArray psi(t, v);
  const GaussianUnitarySpec spec = BeamSplitter{0, 1, 0.4};
  const FockArray out = std::get<FockArray>(apply_unitary(spec, psi).state);
  const DensityOp rho = std::get<DensityOp>(apply_unitary(spec, DensityOp::from_pure(psi)).state);
  CHECK((rho.matrix() - DensityOp::from_pure(out).matrix()).norm() < 1e-12);
}

TEST_CASE("tail warning fires when the truncation is too small") {
  const FockTruncation t(6, 1);
  const GatedState out = apply_unitary(Displace{0, cplx(2.0, 0.0)}, FockArray::vacuum(t));
  CHECK(out.tail_warning);
  CHECK(out.tail.tail_mass > 1e-8);
}
