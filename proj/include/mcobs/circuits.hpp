#pragma once

// Optical circuits measuring the multi-copy observables, and the
// photon-number-difference readout.
//
// Circuit files:
//   {"name": "...", "modes": 3, "readout": [2, 3],
//    "elements": [
//      {"type": "beam_splitter", "modes": [1, 2], "transmittance": 0.5,
//       "convention": "reflection"},
//      {"type": "phase_rotation", "mode": 3, "theta": 1.5707963267948966},
//      {"type": "squeeze", "mode": 1, "s": [re, im]},
//      {"type": "displace", "mode": 1, "alpha": [re, im]}]}
// Modes are 1-based in files.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mcobs/three_copy.hpp"

namespace mcobs {

struct CircuitSpec {
  std::string name;
  int modes = 2;
  std::vector<GaussianUnitarySpec> elements;
  /// 0-based pair read out as (n_a - n_b)/2.
  std::array<int, 2> readout{0, 1};

  bool passive() const;
};

using BsConvention = BeamSplitterConvention;

/// pi/2 rotation on mode 2, then a 50:50 beam splitter: L_z = (n1 - n2)/2 at the output.
CircuitSpec fig1_two_copy(BsConvention conv = BsConvention::kReflection);
/// 50:50 beam splitter, then pi/2 rotation on mode 1: L_y = (n1 - n2)/2 at the output.
CircuitSpec fig3_alternative(BsConvention conv = BsConvention::kReflection);
/// Beam splitters (1,2) t=1/2 and (1,3) t=2/3, pi/2 rotation on mode 3, 50:50 on (2,3):
/// M = (n2 - n3)/2 at the output.
CircuitSpec fig4_three_copy(BsConvention conv = BsConvention::kReflection);
/// The two beam splitters that turn (1,1,1)/sqrt(3) into (1,0,0).
CircuitSpec fig4_first_stage(BsConvention conv = BsConvention::kReflection);

/// "fig1" / "fig1_two_copy", "fig3" / "fig3_alternative", "fig4" / "fig4_three_copy",
/// "fig4_first_stage", "identity2", "identity3".
CircuitSpec preset_circuit(std::string_view name, BsConvention conv = BsConvention::kReflection);

CircuitSpec parse_circuit(std::string_view json_text);

CMatrix circuit_mode_matrix(const CircuitSpec& c);

/// Evolves a box state through the circuit; the input mode count must match.
GatedState run_circuit(const CircuitSpec& c, const State& input, double tail_max = 1e-8);

struct DifferenceReadout {
  int mode_a = 0;
  int mode_b = 1;
  OutcomeDistribution distribution;  ///< keyed by n_a - n_b = 2d
};

/// Distribution of (n_a - n_b)/2 from the diagonal of a box state.
DifferenceReadout photon_difference_distribution(const State& state, int mode_a, int mode_b);

/// Exact readout distribution for a passive circuit fed with `c.modes` copies
/// of a one-mode state (sector by sector, no box truncation).
OutcomeDistribution circuit_distribution(const CircuitSpec& c, const State& one_mode,
                                         const MultiCopyOptions& opts = {});

struct TableCheck {
  std::string name;
  double residual;
  bool passed;
};

struct OperatorTableReport {
  std::vector<TableCheck> checks;
  double max_residual = 0.0;
  bool passed = true;
};

/// Every form of L_x, L_y, L_z (quadratures, a, b = fig1 outputs, c = fig3
/// outputs) against the a-form, on the interior of the box.
OperatorTableReport verify_operator_table(const FockTruncation& trunc,
                                          BsConvention conv = BsConvention::kReflection,
                                          double tol = 1e-9);

struct EquivalenceReport {
  OutcomeDistribution circuit;
  OutcomeDistribution projector;
  double total_variation = 0.0;
};

/// fig1 readout against the L_z eigenprojector sum.
EquivalenceReport circuit_vs_projector_lz(const State& one_mode, const MultiCopyOptions& opts = {});
/// fig4 readout against per-sector diagonalization of M.
EquivalenceReport circuit_vs_projector_m(const State& one_mode, const MultiCopyOptions& opts = {});

}  // namespace mcobs
