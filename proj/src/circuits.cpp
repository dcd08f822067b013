#include "mcobs/circuits.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

namespace mcobs {

using nlohmann::json;

namespace {

const cplx I(0.0, 1.0);
constexpr double kHalfPi = std::numbers::pi / 2.0;

}  // namespace

bool CircuitSpec::passive() const {
  for (const auto& e : elements)
    if (!is_passive(e)) return false;
  return true;
}

CircuitSpec fig1_two_copy(BsConvention conv) {
  return {"fig1_two_copy", 2, {PhaseRotation{1, kHalfPi}, BeamSplitter{0, 1, 0.5, conv}}, {0, 1}};
}

CircuitSpec fig3_alternative(BsConvention conv) {
  return {"fig3_alternative", 2, {BeamSplitter{0, 1, 0.5, conv}, PhaseRotation{0, kHalfPi}}, {0, 1}};
}

CircuitSpec fig4_first_stage(BsConvention conv) {
  return {"fig4_first_stage",
          3,
          {BeamSplitter{0, 1, 0.5, conv}, BeamSplitter{0, 2, 2.0 / 3.0, conv}},
          {1, 2}};
}

CircuitSpec fig4_three_copy(BsConvention conv) {
  CircuitSpec c = fig4_first_stage(conv);
  c.name = "fig4_three_copy";
  c.elements.push_back(PhaseRotation{2, kHalfPi});
  c.elements.push_back(BeamSplitter{1, 2, 0.5, conv});
  return c;
}

CircuitSpec preset_circuit(std::string_view name, BsConvention conv) {
  if (name == "fig1" || name == "fig1_two_copy") return fig1_two_copy(conv);
  if (name == "fig3" || name == "fig3_alternative") return fig3_alternative(conv);
  if (name == "fig4" || name == "fig4_three_copy") return fig4_three_copy(conv);
  if (name == "fig4_first_stage") return fig4_first_stage(conv);
  if (name == "identity2") return {"identity2", 2, {}, {0, 1}};
  if (name == "identity3") return {"identity3", 3, {}, {1, 2}};
  throw InvalidArgument("unknown circuit preset \"" + std::string(name) + "\"");
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
  throw ParseError("circuit field '" + path + "': " + msg);
}

int read_mode(const json& j, const std::string& path, int modes) {
  if (!j.is_number_integer()) field_error(path, "expected a 1-based mode index");
  const int m = j.get<int>();
  if (m < 1 || m > modes)
    field_error(path, "mode " + std::to_string(m) + " outside 1.." + std::to_string(modes));
  return m - 1;
}

double read_number(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    field_error(path + "." + key, "expected a number");
  return obj.at(key).get<double>();
}

cplx read_complex(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) field_error(path + "." + key, "missing");
  const json& v = obj.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  field_error(path + "." + key, "expected [re, im] or a number");
}

GaussianUnitarySpec read_element(const json& e, const std::string& path, int modes) {
  if (!e.is_object() || !e.contains("type") || !e.at("type").is_string())
    field_error(path + ".type", "missing or not a string");
  const std::string type = e.at("type").get<std::string>();
  if (type == "beam_splitter") {
    if (!e.contains("modes") || !e.at("modes").is_array() || e.at("modes").size() != 2)
      field_error(path + ".modes", "expected a pair [i, j]");
    BeamSplitter bs;
    bs.mode_a = read_mode(e.at("modes")[0], path + ".modes[0]", modes);
    bs.mode_b = read_mode(e.at("modes")[1], path + ".modes[1]", modes);
    bs.transmittance = read_number(e, "transmittance", path);
    if (e.contains("convention")) {
      const json& c = e.at("convention");
      if (c == "reflection")
        bs.convention = BsConvention::kReflection;
      else if (c == "rotation")
        bs.convention = BsConvention::kRotation;
      else
        field_error(path + ".convention", "expected \"reflection\" or \"rotation\"");
    }
    return bs;
  }
  if (!e.contains("mode")) field_error(path + ".mode", "missing");
  const int m = read_mode(e.at("mode"), path + ".mode", modes);
  if (type == "phase_rotation") return PhaseRotation{m, read_number(e, "theta", path)};
  if (type == "squeeze") return Squeeze{m, read_complex(e, "s", path)};
  if (type == "displace") return Displace{m, read_complex(e, "alpha", path)};
  field_error(path + ".type", "unknown element type \"" + type + "\"");
}

}  // namespace

CircuitSpec parse_circuit(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("circuit: JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
  if (!j.is_object()) field_error("$", "expected an object");
  CircuitSpec c;
  c.name = j.value("name", std::string("custom"));
  if (!j.contains("modes") || !j.at("modes").is_number_integer())
    field_error("$.modes", "expected an integer");
  c.modes = j.at("modes").get<int>();
  if (c.modes < 1 || c.modes > kMaxModes) field_error("$.modes", "must be 1, 2 or 3");
  if (!j.contains("elements") || !j.at("elements").is_array())
    field_error("$.elements", "expected an array");
  const json& els = j.at("elements");
  for (std::size_t i = 0; i < els.size(); ++i) {
    const std::string p = "$.elements[" + std::to_string(i) + "]";
    GaussianUnitarySpec e = read_element(els[i], p, c.modes);
    try {
      validate(e, c.modes);
    } catch (const Error& err) {
      field_error(p, err.what());
    }
    c.elements.push_back(e);
  }
  c.readout = c.modes == 3 ? std::array<int, 2>{1, 2} : std::array<int, 2>{0, 1};
  if (j.contains("readout")) {
    const json& r = j.at("readout");
    if (!r.is_array() || r.size() != 2) field_error("$.readout", "expected a pair [i, j]");
    c.readout = {read_mode(r[0], "$.readout[0]", c.modes), read_mode(r[1], "$.readout[1]", c.modes)};
    if (c.readout[0] == c.readout[1]) field_error("$.readout", "modes must differ");
  }
  return c;
}

CMatrix circuit_mode_matrix(const CircuitSpec& c) {
  return compose_circuit_mode_matrix(c.elements, c.modes);
}

GatedState run_circuit(const CircuitSpec& c, const State& input, double tail_max) {
  const int modes = truncation_of(input).modes();
  if (modes != c.modes)
    throw DimensionError("circuit \"" + c.name + "\" acts on " + std::to_string(c.modes) +
                         " modes, input has " + std::to_string(modes));
  GatedState out{input, tail_mass(input), false};
  out.tail_warning = out.tail.exceeds(tail_max);
  for (const auto& e : c.elements) {
    GatedState next = apply_unitary(e, out.state, tail_max);
    next.tail.discarded_mass += out.tail.discarded_mass;
    next.tail_warning = next.tail_warning || out.tail_warning;
    out = std::move(next);
  }
  return out;
}

DifferenceReadout photon_difference_distribution(const State& s, int a, int b) {
  const FockTruncation& t = truncation_of(s);
  if (a == b || a < 0 || b < 0 || a >= t.modes() || b >= t.modes())
    throw InvalidArgument("invalid readout pair (" + std::to_string(a + 1) + ", " +
                          std::to_string(b + 1) + ")");
  DifferenceReadout r{a, b, {}};
  for (Index i = 0; i < t.dim(); ++i) {
    const Occupation o = t.occupation(i);
    double p = 0.0;
    if (const auto* psi = std::get_if<FockArray>(&s))
      p = std::norm(psi->amplitudes()(i));
    else
      p = std::get<DensityOp>(s).matrix()(i, i).real();
    if (p != 0.0) r.distribution.add(o[a] - o[b], p);
  }
  r.distribution.tail = tail_mass(s);
  return r;
}

OutcomeDistribution circuit_distribution(const CircuitSpec& c, const State& s,
                                         const MultiCopyOptions& opts) {
  if (!c.passive())
    throw InvalidArgument("exact multi-copy readout needs a passive circuit; \"" + c.name +
                          "\" has active elements");
  const SectorCircuit sc(c.elements, c.modes);
  return circuit_readout_distribution(s, c.modes, sc, c.readout[0], c.readout[1], opts);
}

// ---------------------------------------------------------------------------

namespace {

/// Output mode operators d_i = sum_j T_ij a_j.
std::vector<ModeOperator> output_modes(const FockTruncation& t, const CMatrix& tm) {
  std::vector<ModeOperator> d;
  for (int i = 0; i < 2; ++i) {
    ModeOperator op = ModeOperator::zero(t);
    for (int j = 0; j < 2; ++j) op = op + tm(i, j) * annihilation(t, j);
    d.push_back(op);
  }
  return d;
}

/// In terms of output modes d (same labels as the operator table):
///   diff  = (d1^dag d1 - d2^dag d2)/2
///   sym   = (d1 d2^dag + d1^dag d2)/2
///   cross = (i/2)(d1 d2^dag - d1^dag d2)
struct Forms {
  ModeOperator diff, sym, cross;
};

Forms forms_of(const std::vector<ModeOperator>& d) {
  const ModeOperator d1 = d[0], d2 = d[1];
  const ModeOperator c1 = d1.adjoint(), c2 = d2.adjoint();
  return {cplx(0.5) * (c1 * d1 - c2 * d2), cplx(0.5) * (d1 * c2 + c1 * d2),
          0.5 * I * (d1 * c2 - c1 * d2)};
}

}  // namespace

OperatorTableReport verify_operator_table(const FockTruncation& t, BsConvention conv, double tol) {
  if (t.modes() != 2) throw DimensionError("operator table needs a two-mode truncation");
  const AngularComponents a = build_angular_components(t);
  const AngularAlternativeForms alt = angular_alternative_forms(t);
  const Forms af = forms_of(output_modes(t, CMatrix::Identity(2, 2)));
  const Forms bf = forms_of(output_modes(t, circuit_mode_matrix(fig1_two_copy(conv))));
  const Forms cf = forms_of(output_modes(t, circuit_mode_matrix(fig3_alternative(conv))));

  OperatorTableReport r;
  auto check = [&](const std::string& name, const ModeOperator& lhs, const ModeOperator& rhs) {
    const double res = interior_difference(lhs, rhs, 2);
    r.checks.push_back({name, res, res < tol});
    r.max_residual = std::max(r.max_residual, res);
    r.passed = r.passed && res < tol;
  };
  check("L_x quadrature form", alt.quad_x, a.l_x);
  check("L_y quadrature form", alt.quad_y, a.l_y);
  check("L_z quadrature form", alt.quad_z, a.l_z);
  check("L_x a-form (n1-n2)/2", af.diff, a.l_x);
  check("L_y a-form", af.sym, a.l_y);
  check("L_z a-form", af.cross, a.l_z);
  check("L_x b-form", bf.sym, a.l_x);
  check("L_y b-form", bf.cross, a.l_y);
  check("L_z b-form (n_b1-n_b2)/2", bf.diff, a.l_z);
  check("L_x c-form", cf.cross, a.l_x);
  check("L_y c-form (n_c1-n_c2)/2", cf.diff, a.l_y);
  check("L_z c-form", cf.sym, a.l_z);
  check("L_x Pauli form", alt.pauli_x, a.l_x);
  check("L_y Pauli form", alt.pauli_y, a.l_y);
  check("L_z Pauli form", alt.pauli_z, a.l_z);
  return r;
}

EquivalenceReport circuit_vs_projector_lz(const State& s, const MultiCopyOptions& opts) {
  EquivalenceReport r;
  r.circuit = circuit_distribution(fig1_two_copy(), s, opts);
  r.projector = outcome_distribution_lz(s, opts);
  r.total_variation = total_variation(r.circuit, r.projector);
  return r;
}

EquivalenceReport circuit_vs_projector_m(const State& s, const MultiCopyOptions& opts) {
  EquivalenceReport r;
  r.circuit = outcome_distribution_m(s, MRoute::kCircuit, opts);
  r.projector = outcome_distribution_m(s, MRoute::kDiagonalization, opts);
  r.total_variation = total_variation(r.circuit, r.projector);
  return r;
}

}  // namespace mcobs
