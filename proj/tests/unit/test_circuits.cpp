#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mcobs/circuits.hpp"
#include "mcobs/states.hpp"

using namespace mcobs;

namespace {

const cplx I(0.0, 1.0);

CMatrix circuit_unitary(const CircuitSpec& c, const FockTruncation& t) {
  CMatrix u = CMatrix::Identity(t.dim(), t.dim());
  for (const auto& e : c.elements) u = unitary_matrix(e, t) * u;
  return u;
}

ModeOperator half_difference(const FockTruncation& t, int a, int b) {
  return cplx(0.5) * (number(t, a) - number(t, b));
}

State random_mixed(int cutoff, int rank, unsigned seed) {
  std::srand(seed);
  const CMatrix g = CMatrix::Random(cutoff + 1, rank);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityOp(FockTruncation(cutoff, 1), rho);
}

}  // namespace

TEST_CASE("preset mode matrices") {
  const double r = 1.0 / std::sqrt(2.0);
  // fig1: b1 = (a1 - i a2)/sqrt2, b2 = (a1 + i a2)/sqrt2.
  CMatrix f1(2, 2);
  f1 << r, -I * r, r, I * r;
  CHECK((circuit_mode_matrix(fig1_two_copy()) - f1).norm() < 1e-14);

  const double s3 = 1.0 / std::sqrt(3.0), s6 = 1.0 / std::sqrt(6.0);
  CMatrix first(3, 3);
  first << s3, s3, s3, r, -r, 0, s6, s6, -2 * s6;
  CHECK((circuit_mode_matrix(fig4_first_stage()) - first).cwiseAbs().maxCoeff() < 1e-12);

  for (const char* name : {"fig1", "fig3", "fig4", "fig4_first_stage", "identity2", "identity3"}) {
    const CircuitSpec c = preset_circuit(name);
    const CMatrix t = circuit_mode_matrix(c);
    CHECK((t.adjoint() * t - CMatrix::Identity(c.modes, c.modes)).norm() < 1e-14);
    CHECK(c.passive());
  }
  CHECK(preset_circuit("fig4").readout == std::array<int, 2>{1, 2});
  CHECK_THROWS_AS(preset_circuit("fig9"), Error);
}

TEST_CASE("circuit JSON") {
  const CircuitSpec c = parse_circuit(R"({"name": "m", "modes": 3, "elements": [
      {"type": "beam_splitter", "modes": [1, 2], "transmittance": 0.5},
      {"type": "beam_splitter", "modes": [1, 3], "transmittance": 0.6666666666666666},
      {"type": "phase_rotation", "mode": 3, "theta": 1.5707963267948966},
      {"type": "beam_splitter", "modes": [2, 3], "transmittance": 0.5, "convention": "reflection"}]})");
  CHECK(c.modes == 3);
  CHECK(c.readout == std::array<int, 2>{1, 2});
  CHECK((circuit_mode_matrix(c) - circuit_mode_matrix(fig4_three_copy())).norm() < 1e-14);

  const CircuitSpec g = parse_circuit(R"({"modes": 1, "elements": [
      {"type": "squeeze", "mode": 1, "s": [0.1, 0.2]}, {"type": "displace", "mode": 1, "alpha": 0.5}]})");
  CHECK(g.elements.size() == 2);
  CHECK(!g.passive());

  const auto code_of = [](const char* text) {
    try {
      parse_circuit(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvariant;
  };
  CHECK(code_of("{\"modes\": 2,\n \"elements\": [}") == ErrorCode::kParse);
  CHECK(code_of(R"({"modes": 2, "elements": [{"type": "mirror", "mode": 1}]})") == ErrorCode::kParse);
  CHECK(code_of(R"({"modes": 2, "elements": [{"type": "beam_splitter", "modes": [1, 3], "transmittance": 0.5}]})") ==
        ErrorCode::kParse);
  CHECK(code_of(R"({"modes": 2, "elements": [{"type": "beam_splitter", "modes": [1, 2], "transmittance": 1.5}]})") ==
        ErrorCode::kParse);
  CHECK(code_of(R"({"modes": 4, "elements": []})") == ErrorCode::kParse);
  try {
    parse_circuit("{\"modes\": 2,\n \"elements\": [}");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    parse_circuit(R"({"modes": 2, "elements": [{"type": "phase_rotation", "mode": 1}]})");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("$.elements[0].theta") != std::string::npos);
  }
}

TEST_CASE("fig1 on two squeezed copies gives perfect photon-number correlation") {
  const State sq = normalized(squeezed_vacuum(0.3, 16).state);
  const State in = tensor_power(with_cutoff(sq, 32), 2);
  const GatedState out = run_circuit(fig1_two_copy(), in, 1.0);
  const FockArray& psi = std::get<FockArray>(out.state);
  const FockTruncation& t = psi.truncation();
  double off = 0.0;
  for (Index i = 0; i < t.dim(); ++i) {
    const Occupation o = t.occupation(i);
    if (o[0] != o[1]) off += std::norm(psi.amplitudes()(i));
  }
  CHECK(off < 1e-6);
  const auto d = photon_difference_distribution(out.state, 0, 1);
  CHECK(d.distribution.probability(0) > 1 - 1e-6);
}

TEST_CASE("fig4 first stage concentrates a common displacement in mode 1") {
  const cplx alpha(0.4, 0.1);
  const State c = with_cutoff(coherent_state(alpha, 8).state, 24);
  const State in = tensor_power(c, 3);
  const FockArray out = std::get<FockArray>(run_circuit(fig4_first_stage(), in, 1.0).state);
  const FockArray one = std::get<FockArray>(coherent_state(std::sqrt(3.0) * alpha, 24).state);
  const FockArray vac = FockArray::vacuum(FockTruncation(24, 1));
  const FockArray expect = tensor_product(tensor_product(one, vac), vac);
  CHECK(std::abs(expect.amplitudes().dot(out.amplitudes())) > 1 - 1e-9);
}

TEST_CASE("identity circuit and mode mismatch") {
  const State in = tensor_power(random_mixed(3, 2, 4), 2);
  const GatedState out = run_circuit(preset_circuit("identity2"), in);
  CHECK((std::get<DensityOp>(out.state).matrix() - std::get<DensityOp>(in).matrix()).norm() < 1e-15);
  CHECK_THROWS_AS(run_circuit(fig4_three_copy(), in), Error);
}

TEST_CASE("photon-number difference readout") {
  const FockTruncation t(3, 2);
  const auto d = photon_difference_distribution(FockArray::basis(t, {1, 0, 0}), 0, 1);
  CHECK(d.distribution.probability(1) == doctest::Approx(1.0));

  const State one = fock_state(1, 2).state;
  const State in = with_cutoff(one, 2);
  const GatedState out = run_circuit(fig1_two_copy(), tensor_power(in, 2), 1.0);
  const auto r = photon_difference_distribution(out.state, 0, 1);
  CHECK(std::abs(r.distribution.probability(2) - 0.5) < 1e-12);
  CHECK(std::abs(r.distribution.probability(-2) - 0.5) < 1e-12);

  const double n = 0.5, q = n / (n + 1);
  const auto th = circuit_distribution(fig1_two_copy(), thermal_state(n, 50).state);
  OutcomeDistribution law;
  for (int k = -150; k <= 150; ++k) law.add(k, std::pow(q, std::abs(k)) / (2 * n + 1));
  CHECK(total_variation(th, law) < 1e-8);
  CHECK_THROWS_AS(circuit_distribution(preset_circuit("fig1"), tensor_power(one, 2)), Error);
}

TEST_CASE("operator table") {
  const FockTruncation t(10, 2);
  const OperatorTableReport ok = verify_operator_table(t);
  CHECK(ok.passed);
  CHECK(ok.checks.size() == 15);
  CHECK(ok.max_residual < 1e-9);

  const OperatorTableReport bad = verify_operator_table(t, BsConvention::kRotation);
  CHECK(!bad.passed);
  bool b_form_failed = false;
  for (const auto& c : bad.checks)
    if (!c.passed && c.name.find("b-form") != std::string::npos) b_form_failed = true;
  CHECK(b_form_failed);
}

TEST_CASE("readouts reproduce the observables") {
  const FockTruncation t2(8, 2);
  const AngularComponents l = build_angular_components(t2);
  const CMatrix u1 = circuit_unitary(fig1_two_copy(), t2);
  const CMatrix lz = u1.adjoint() * half_difference(t2, 0, 1).dense() * u1;
  CHECK(max_abs_difference_on(lz, l.l_z.dense(), t2, TotalAtMost{2, 8}) < 1e-10);
  const CMatrix u3 = circuit_unitary(fig3_alternative(), t2);
  const CMatrix ly = u3.adjoint() * half_difference(t2, 0, 1).dense() * u3;
  CHECK(max_abs_difference_on(ly, l.l_y.dense(), t2, TotalAtMost{2, 8}) < 1e-10);

  const FockTruncation t3(5, 3);
  const ModeOperator m = build_three_copy(t3).m;
  const CMatrix u4 = circuit_unitary(fig4_three_copy(), t3);
  const CMatrix mm = u4.adjoint() * half_difference(t3, 1, 2).dense() * u4;
  CHECK(max_abs_difference_on(mm, m.dense(), t3, TotalAtMost{3, 5}) < 1e-10);

  // Without the pi/2 rotation the last stage reads out something else.
  CircuitSpec no_rot = fig4_three_copy();
  no_rot.elements.erase(no_rot.elements.begin() + 2);
  const CMatrix u5 = circuit_unitary(no_rot, t3);
  const CMatrix other = u5.adjoint() * half_difference(t3, 1, 2).dense() * u5;
  CHECK(max_abs_difference_on(other, m.dense(), t3, TotalAtMost{3, 5}) > 0.1);
}

TEST_CASE("circuit and projector routes agree") {
  for (const State& s : {fock_state(0, 3).state, fock_state(1, 3).state, random_mixed(8, 4, 21)}) {
    const auto lz = circuit_vs_projector_lz(s);
    CHECK(lz.total_variation < 1e-10);
    const auto m = circuit_vs_projector_m(s);
    CHECK(m.total_variation < 1e-10);
  }
  const auto one = circuit_vs_projector_lz(fock_state(1, 4).state);
  CHECK(one.circuit.probability(2) == doctest::Approx(0.5));
}
