#pragma once

// One-mode state constructors and the JSON state-specification document.
//
//   {"kind": "vacuum"}
//   {"kind": "fock", "n": 1}
//   {"kind": "coherent", "alpha": [re, im]}
//   {"kind": "squeezed", "s": [re, im]}            or "r"/"phi"
//   {"kind": "thermal", "mean_n": 1.0}
//   {"kind": "displaced_squeezed_thermal", "alpha": [..], "s": [..], "mean_n": 0.5}
//   {"kind": "mixture", "components": [{"weight": 0.5, "state": {...}}, ...]}
//   {"kind": "amplitudes", "amplitudes": [[re, im], ...]}
//   {"kind": "density", "matrix": [[[re, im], ...], ...]}
//
// Complex numbers are [re, im]; a bare number is read as real.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcobs/mode_operators.hpp"

namespace mcobs {

struct VacuumSpec {};
struct FockSpec {
  int n = 0;
};
struct CoherentSpec {
  cplx alpha;
};
struct SqueezedSpec {
  cplx s;
};
struct ThermalSpec {
  double mean_n = 0.0;
};
struct DisplacedSqueezedThermalSpec {
  cplx alpha;
  cplx s;
  double mean_n = 0.0;
};
struct AmplitudesSpec {
  std::vector<cplx> amplitudes;
};
struct DensitySpec {
  std::vector<std::vector<cplx>> matrix;
};

struct StateSpec;
struct MixtureSpec {
  std::vector<double> weights;
  std::vector<StateSpec> components;
};

struct StateSpec {
  std::variant<VacuumSpec, FockSpec, CoherentSpec, SqueezedSpec, ThermalSpec,
               DisplacedSqueezedThermalSpec, AmplitudesSpec, DensitySpec, MixtureSpec>
      kind;
};

struct MakeOptions {
  double tail_max = 1e-8;
  /// Throw TailGateError instead of setting the warning flag.
  bool strict = false;
};

/// Working cutoff used for generator-built states before projection.
int working_cutoff(int cutoff);

GatedState make_state(const StateSpec& spec, int cutoff, const MakeOptions& opts = {});

// Shorthands for the common constructors.
GatedState vacuum_state(int cutoff);
GatedState fock_state(int n, int cutoff, const MakeOptions& opts = {});
GatedState coherent_state(cplx alpha, int cutoff, const MakeOptions& opts = {});
GatedState squeezed_vacuum(cplx s, int cutoff, const MakeOptions& opts = {});
GatedState thermal_state(double mean_n, int cutoff, const MakeOptions& opts = {});
GatedState displaced_squeezed_thermal(cplx alpha, cplx s, double mean_n, int cutoff,
                                      const MakeOptions& opts = {});

/// Parses a state-spec document. Errors carry line/column or the JSON path
/// of the offending field.
StateSpec parse_state_spec(std::string_view json_text);

std::string kind_name(const StateSpec& spec);

}  // namespace mcobs
