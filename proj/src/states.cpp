#include "mcobs/states.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace mcobs {

using nlohmann::json;

int working_cutoff(int cutoff) { return 2 * cutoff + 20; }

namespace {

GatedState finish(State s, double discarded, const MakeOptions& opts, const std::string& what) {
  GatedState out{std::move(s), {}, false};
  out.tail = tail_mass(out.state);
  out.tail.discarded_mass = std::max(0.0, discarded);
  out.tail_warning = out.tail.exceeds(opts.tail_max);
  if (out.tail_warning && opts.strict) {
    std::ostringstream os;
    os << what << ": cutoff " << truncation_of(out.state).cutoff()
       << " too small (tail mass " << out.tail.tail_mass << ", discarded "
       << out.tail.discarded_mass << ", limit " << opts.tail_max << ")";
    throw TailGateError(os.str());
  }
  return out;
}

/// Project a working-cutoff state down and renormalize, reporting the loss.
std::pair<State, double> project(const State& work, int cutoff) {
  State low = with_cutoff(work, cutoff);
  const double kept = weight(low) / weight(work);
  return {normalized(low), 1.0 - kept};
}

std::vector<double> thermal_weights(double mean_n, int cutoff) {
  std::vector<double> w(cutoff + 1);
  const double q = mean_n / (mean_n + 1.0);
  double p = 1.0 / (mean_n + 1.0);
  for (int k = 0; k <= cutoff; ++k) {
    w[k] = p;
    p *= q;
  }
  return w;
}

DensityOp thermal_density(double mean_n, int cutoff, double* discarded) {
  if (!(mean_n >= 0.0) || !std::isfinite(mean_n))
    throw InvalidArgument("thermal state needs a finite mean photon number >= 0");
  const auto w = thermal_weights(mean_n, cutoff);
  double total = 0.0;
  for (double x : w) total += x;
  CMatrix rho = CMatrix::Zero(cutoff + 1, cutoff + 1);
  for (int k = 0; k <= cutoff; ++k) rho(k, k) = w[k] / total;
  if (discarded) *discarded = 1.0 - total;
  return DensityOp(FockTruncation(cutoff, 1), std::move(rho));
}

void check_finite(cplx z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidArgument(std::string(what) + " must be finite");
}

}  // namespace

GatedState vacuum_state(int cutoff) {
  return finish(FockArray::vacuum(FockTruncation(cutoff, 1)), 0.0, {}, "vacuum");
}

GatedState fock_state(int n, int cutoff, const MakeOptions& opts) {
  if (n < 0) throw InvalidArgument("Fock state needs n >= 0");
  if (n > cutoff)
    throw TailGateError("Fock state |" + std::to_string(n) + "> does not fit cutoff " +
                        std::to_string(cutoff));
  return finish(FockArray::basis(FockTruncation(cutoff, 1), {n, 0, 0}), 0.0, opts, "fock");
}

GatedState coherent_state(cplx alpha, int cutoff, const MakeOptions& opts) {
  check_finite(alpha, "coherent amplitude");
  const FockTruncation work(working_cutoff(cutoff), 1);
  const GatedState evolved = apply_unitary(Displace{0, alpha}, FockArray::vacuum(work), 1.0);
  auto [s, lost] = project(evolved.state, cutoff);
  return finish(std::move(s), lost, opts, "coherent");
}

GatedState squeezed_vacuum(cplx s, int cutoff, const MakeOptions& opts) {
  check_finite(s, "squeezing parameter");
  const FockTruncation work(working_cutoff(cutoff), 1);
  const GatedState evolved = apply_unitary(Squeeze{0, s}, FockArray::vacuum(work), 1.0);
  auto [st, lost] = project(evolved.state, cutoff);
  return finish(std::move(st), lost, opts, "squeezed");
}

GatedState thermal_state(double mean_n, int cutoff, const MakeOptions& opts) {
  double lost = 0.0;
  DensityOp rho = thermal_density(mean_n, cutoff, &lost);
  return finish(std::move(rho), lost, opts, "thermal");
}

GatedState displaced_squeezed_thermal(cplx alpha, cplx s, double mean_n, int cutoff,
                                      const MakeOptions& opts) {
  check_finite(alpha, "displacement");
  check_finite(s, "squeezing parameter");
  const int w = working_cutoff(cutoff);
  double lost_thermal = 0.0;
  State work = thermal_density(mean_n, w, &lost_thermal);
  if (mean_n == 0.0) work = FockArray::vacuum(FockTruncation(w, 1));
  work = apply_unitary(Squeeze{0, s}, work, 1.0).state;
  work = apply_unitary(Displace{0, alpha}, work, 1.0).state;
  auto [st, lost] = project(work, cutoff);
  return finish(std::move(st), lost + lost_thermal, opts, "displaced_squeezed_thermal");
}

GatedState make_state(const StateSpec& spec, int cutoff, const MakeOptions& opts) {
  return std::visit(
      [&](const auto& k) -> GatedState {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, VacuumSpec>) {
          return vacuum_state(cutoff);
        } else if constexpr (std::is_same_v<T, FockSpec>) {
          return fock_state(k.n, cutoff, opts);
        } else if constexpr (std::is_same_v<T, CoherentSpec>) {
          return coherent_state(k.alpha, cutoff, opts);
        } else if constexpr (std::is_same_v<T, SqueezedSpec>) {
          return squeezed_vacuum(k.s, cutoff, opts);
        } else if constexpr (std::is_same_v<T, ThermalSpec>) {
          return thermal_state(k.mean_n, cutoff, opts);
        } else if constexpr (std::is_same_v<T, DisplacedSqueezedThermalSpec>) {
          return displaced_squeezed_thermal(k.alpha, k.s, k.mean_n, cutoff, opts);
        } else if constexpr (std::is_same_v<T, AmplitudesSpec>) {
          const FockTruncation t(cutoff, 1);
          CVector v = CVector::Zero(t.dim());
          double dropped = 0.0;
          double total = 0.0;
          for (std::size_t n = 0; n < k.amplitudes.size(); ++n) {
            check_finite(k.amplitudes[n], "amplitude");
            total += std::norm(k.amplitudes[n]);
            if (static_cast<int>(n) <= cutoff)
              v(static_cast<Index>(n)) = k.amplitudes[n];
            else
              dropped += std::norm(k.amplitudes[n]);
          }
          if (std::abs(total - 1.0) > kNormTolerance)
            throw InvalidArgument("amplitudes are not normalized (norm^2 = " +
                                  std::to_string(total) + ")");
          FockArray psi(t, std::move(v));
          return finish(dropped > 0.0 ? psi.normalized() : psi, dropped, opts, "amplitudes");
        } else if constexpr (std::is_same_v<T, DensitySpec>) {
          const Index d = static_cast<Index>(k.matrix.size());
          if (d == 0) throw InvalidArgument("density matrix is empty");
          const int full_cutoff = std::max(1, static_cast<int>(d) - 1);
          CMatrix m = CMatrix::Zero(full_cutoff + 1, full_cutoff + 1);
          for (Index i = 0; i < d; ++i) {
            if (static_cast<Index>(k.matrix[i].size()) != d)
              throw InvalidArgument("density matrix must be square");
            for (Index j = 0; j < d; ++j) m(i, j) = k.matrix[i][j];
          }
          DensityOp full(FockTruncation(full_cutoff, 1), std::move(m));
          if (!full.is_normalized()) throw InvalidArgument("density matrix trace is not 1");
          if (full.min_eigenvalue() < -kNormTolerance)
            throw InvalidArgument("density matrix has a negative eigenvalue");
          State low = with_cutoff(full, cutoff);
          const double kept = weight(low);
          return finish(normalized(low), 1.0 - kept, opts, "density");
        } else {
          if (k.weights.size() != k.components.size() || k.weights.empty())
            throw InvalidArgument("mixture needs one weight per component");
          double wsum = 0.0;
          for (double w : k.weights) {
            if (!(w >= 0.0)) throw InvalidArgument("mixture weights must be >= 0");
            wsum += w;
          }
          if (std::abs(wsum - 1.0) > kNormTolerance)
            throw InvalidArgument("mixture weights must sum to 1");
          const FockTruncation t(cutoff, 1);
          CMatrix rho = CMatrix::Zero(t.dim(), t.dim());
          double lost = 0.0;
          for (std::size_t i = 0; i < k.components.size(); ++i) {
            const GatedState c = make_state(k.components[i], cutoff, MakeOptions{1.0, false});
            rho += k.weights[i] * to_density(c.state).matrix();
            lost += k.weights[i] * c.tail.discarded_mass;
          }
          return finish(DensityOp(t, std::move(rho)), lost, opts, "mixture");
        }
      },
      spec.kind);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
  throw ParseError("state spec field '" + path + "': " + msg);
}

cplx read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  field_error(path, "expected a complex number [re, im] or a real number");
}

double read_real(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) field_error(path + "." + key, "missing");
  const json& v = obj.at(key);
  if (!v.is_number()) field_error(path + "." + key, "expected a number");
  return v.get<double>();
}

cplx read_complex_field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) field_error(path + "." + key, "missing");
  return read_complex(obj.at(key), path + "." + key);
}

cplx read_squeezing(const json& obj, const std::string& path) {
  if (obj.contains("s")) return read_complex(obj.at("s"), path + ".s");
  if (obj.contains("r")) {
    const double r = read_real(obj, "r", path);
    const double phi = obj.contains("phi") ? read_real(obj, "phi", path) : 0.0;
    return std::polar(r, phi);
  }
  field_error(path + ".s", "missing (give \"s\": [re, im] or \"r\"/\"phi\")");
}

StateSpec spec_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) field_error(path + ".kind", "missing or not a string");
  const std::string kind = j.at("kind").get<std::string>();
  StateSpec out;
  if (kind == "vacuum") {
    out.kind = VacuumSpec{};
  } else if (kind == "fock") {
    if (!j.contains("n") || !j.at("n").is_number_integer()) field_error(path + ".n", "expected an integer");
    out.kind = FockSpec{j.at("n").get<int>()};
  } else if (kind == "coherent") {
    out.kind = CoherentSpec{read_complex_field(j, "alpha", path)};
  } else if (kind == "squeezed") {
    out.kind = SqueezedSpec{read_squeezing(j, path)};
  } else if (kind == "thermal") {
    out.kind = ThermalSpec{read_real(j, "mean_n", path)};
  } else if (kind == "displaced_squeezed_thermal") {
    DisplacedSqueezedThermalSpec d;
    d.alpha = j.contains("alpha") ? read_complex(j.at("alpha"), path + ".alpha") : cplx{};
    d.s = (j.contains("s") || j.contains("r")) ? read_squeezing(j, path) : cplx{};
    d.mean_n = j.contains("mean_n") ? read_real(j, "mean_n", path) : 0.0;
    out.kind = d;
  } else if (kind == "amplitudes") {
    if (!j.contains("amplitudes") || !j.at("amplitudes").is_array())
      field_error(path + ".amplitudes", "expected an array");
    AmplitudesSpec a;
    const json& arr = j.at("amplitudes");
    for (std::size_t i = 0; i < arr.size(); ++i)
      a.amplitudes.push_back(read_complex(arr[i], path + ".amplitudes[" + std::to_string(i) + "]"));
    out.kind = std::move(a);
  } else if (kind == "density") {
    if (!j.contains("matrix") || !j.at("matrix").is_array())
      field_error(path + ".matrix", "expected an array of rows");
    DensitySpec d;
    const json& rows = j.at("matrix");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].is_array()) field_error(path + ".matrix[" + std::to_string(r) + "]", "expected a row");
      std::vector<cplx> row;
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        row.push_back(read_complex(rows[r][c], path + ".matrix[" + std::to_string(r) + "][" +
                                                   std::to_string(c) + "]"));
      d.matrix.push_back(std::move(row));
    }
    out.kind = std::move(d);
  } else if (kind == "mixture") {
    if (!j.contains("components") || !j.at("components").is_array())
      field_error(path + ".components", "expected an array");
    MixtureSpec m;
    const json& comps = j.at("components");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string p = path + ".components[" + std::to_string(i) + "]";
      if (!comps[i].is_object()) field_error(p, "expected an object");
      m.weights.push_back(read_real(comps[i], "weight", p));
      if (!comps[i].contains("state")) field_error(p + ".state", "missing");
      m.components.push_back(spec_from_json(comps[i].at("state"), p + ".state"));
    }
    out.kind = std::move(m);
  } else {
    field_error(path + ".kind", "unknown kind \"" + kind + "\"");
  }
  return out;
}

}  // namespace

StateSpec parse_state_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("state spec: JSON syntax error at line " + std::to_string(line) +
                     ", column " + std::to_string(col));
  }
  return spec_from_json(j, "$");
}

std::string kind_name(const StateSpec& spec) {
  static const char* names[] = {"vacuum",  "fock",      "coherent",
                                "squeezed", "thermal",  "displaced_squeezed_thermal",
                                "amplitudes", "density", "mixture"};
  return names[spec.kind.index()];
}

}  // namespace mcobs
