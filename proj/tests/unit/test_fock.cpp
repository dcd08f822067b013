#include <doctest.h>

#include <array>
#include <cmath>

#include "mcobs/fock.hpp"

using namespace mcobs;

namespace {

FockArray random_pure(const FockTruncation& t, unsigned seed) {
  CVector v(t.dim());
  for (Index i = 0; i < t.dim(); ++i) {
    const double a = std::sin(1.3 * (i + 1) * seed + 0.7);
    const double b = std::cos(0.9 * (i + 2) * seed);
    v(i) = cplx(a, b);
  }
  return FockArray(t, v / v.norm());
}

}  // namespace

TEST_CASE("flat index puts mode 0 in the most significant digit") {
  const FockTruncation t(3, 3);
  CHECK(t.dim() == 64);
  CHECK(t.flat_index({1, 2, 3}) == 1 * 16 + 2 * 4 + 3);
  CHECK(t.occupation(27) == Occupation{1, 2, 3});
  CHECK(t.total_photons(27) == 6);
  for (Index i = 0; i < t.dim(); ++i) CHECK(t.flat_index(t.occupation(i)) == i);
  CHECK_THROWS_AS(t.flat_index({4, 0, 0}), Error);
  CHECK_THROWS_AS(FockTruncation(0, 1), Error);
  CHECK_THROWS_AS(FockTruncation(4, 4), Error);
}

TEST_CASE("construction validates shape and finiteness") {
  const FockTruncation t(2, 1);
  CHECK_THROWS_AS(FockArray(t, CVector::Zero(4)), Error);
  CVector bad = CVector::Zero(3);
  bad(1) = cplx(NAN, 0.0);
  CHECK_THROWS_AS(FockArray(t, bad), Error);
  CMatrix nh = CMatrix::Zero(3, 3);
  nh(0, 1) = 0.5;
  CHECK_THROWS_AS(DensityOp(t, nh), Error);
  try {
    FockArray(t, CVector::Zero(5));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimension);
  }
}

TEST_CASE("tensor product matches the Kronecker product") {
  const FockTruncation t(2, 1);
  const FockArray a = random_pure(t, 1);
  const FockArray b = random_pure(t, 2);
  const FockArray ab = tensor_product(a, b);
  CHECK(ab.truncation().modes() == 2);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      CHECK(std::abs(ab.amplitude({i, j, 0}) - a.amplitudes()(i) * b.amplitudes()(j)) < 1e-15);

  const DensityOp ra = DensityOp::from_pure(a);
  const DensityOp rb = DensityOp::from_pure(b);
  const DensityOp rab = tensor_product(ra, rb);
  CHECK((rab.matrix() - DensityOp::from_pure(ab).matrix()).norm() < 1e-14);

  CHECK_THROWS_AS(tensor_product(a, random_pure(FockTruncation(3, 1), 1)), Error);
  const FockArray three = tensor_product(ab, a);
  CHECK_THROWS_AS(tensor_product(three, a), Error);
}

TEST_CASE("partial trace of a product recovers the factors") {
  const FockTruncation t(2, 1);
  const DensityOp a = DensityOp::from_pure(random_pure(t, 3));
  const DensityOp b = DensityOp::from_pure(random_pure(t, 4));
  const DensityOp c = DensityOp::from_pure(random_pure(t, 5));
  const DensityOp abc = tensor_product(tensor_product(a, b), c);
  const std::array<int, 1> k0{0}, k1{1}, k2{2};
  CHECK((partial_trace(abc, k0).matrix() - a.matrix()).norm() < 1e-14);
  CHECK((partial_trace(abc, k1).matrix() - b.matrix()).norm() < 1e-14);
  CHECK((partial_trace(abc, k2).matrix() - c.matrix()).norm() < 1e-14);
  const std::array<int, 2> k02{2, 0};
  CHECK((partial_trace(abc, k02).matrix() - tensor_product(a, c).matrix()).norm() < 1e-14);
  CHECK_THROWS_AS(partial_trace(abc, std::span<const int>{}), Error);
  const std::array<int, 2> dup{1, 1};
  CHECK_THROWS_AS(partial_trace(abc, dup), Error);
  const std::array<int, 1> out{3};
  CHECK_THROWS_AS(partial_trace(abc, out), Error);
}

TEST_CASE("tail mass counts weight in the top two levels of any mode") {
  const FockTruncation t(4, 2);
  CVector v = CVector::Zero(t.dim());
  v(t.flat_index({0, 0, 0})) = std::sqrt(0.5);
  v(t.flat_index({1, 3, 0})) = std::sqrt(0.3);
  v(t.flat_index({4, 0, 0})) = std::sqrt(0.2);
  const FockArray psi(t, v);
  CHECK(tail_mass(psi).tail_mass == doctest::Approx(0.5));
  CHECK(tail_mass(DensityOp::from_pure(psi)).tail_mass == doctest::Approx(0.5));
}

TEST_CASE("with_cutoff pads and drops without renormalizing") {
  const FockTruncation t(3, 1);
  const FockArray psi = random_pure(t, 7);
  const State up = with_cutoff(psi, 6);
  CHECK(weight(up) == doctest::Approx(1.0));
  const State down = with_cutoff(psi, 1);
  const double expected = std::norm(psi.amplitudes()(0)) + std::norm(psi.amplitudes()(1));
  CHECK(weight(down) == doctest::Approx(expected));
  CHECK_THROWS_AS(require_normalized(down, "test"), Error);
  CHECK_NOTHROW(require_normalized(normalized(down), "test"));
}

TEST_CASE("purity and minimum eigenvalue") {
  const FockTruncation t(2, 1);
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  const DensityOp rho(t, m);
  CHECK(rho.purity() == doctest::Approx(0.5));
  CHECK(rho.min_eigenvalue() == doctest::Approx(0.0));
  const auto p = photon_distribution(rho);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[2] == doctest::Approx(0.0));
}
