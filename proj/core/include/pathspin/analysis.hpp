// Copyright 2026 The pathspin Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Closed-form fidelity formulas, formula-vs-simulation cross validation,
 * parameter sweeps and the interception analysis.
 */

#pragma once

#include "pathspin/protocol.hpp"

namespace pathspin {

/// Raised when a per-case fidelity is requested for a branch whose
/// probability (the formula denominator) vanishes.
class DegenerateBranch : public std::runtime_error {
 public:
  explicit DegenerateBranch(const std::string& what)
      : std::runtime_error(what) {}
};

/// Per-branch fidelities against the closed forms, with the
/// probability-weighted average compared to the formula value.
struct FidelityReport {
  std::vector<BranchRecord> per_branch;
  std::optional<double> case_fidelity_m2_0;  // empty when the case is degenerate
  std::optional<double> case_fidelity_m2_1;
  double average_formula;
  double average_enumerated;
  double max_abs_disagreement;
};

struct SweepGrid {
  std::vector<double> alphas;
  std::vector<double> gammas;
  /// values[i][j] = average fidelity at (alphas[i], gammas[j]).
  std::vector<std::vector<double>> values;
};

/// Interception analysis: the state Eve holds and how little it depends on
/// the input.
struct EveReport {
  DensityMatrix rho_eve;
  double input_independence;
};

/// Closed-form per-case transfer fidelity:
/// m2 = 0 → (αγ²+βδ²)²/(α²γ²+β²δ²), m2 = 1 → (βγ²+αδ²)²/(β²γ²+α²δ²).
/// Throws DegenerateBranch when the denominator underflows.
double fidelity_case(int m2, const ProtocolConfig& config);

/// γ⁴ + δ⁴ + 4αβγ²δ². Valid only for real inputs; rejects a nonzero input
/// phase.
double average_fidelity_formula(const ProtocolConfig& config);

/// Full-branch enumeration against the closed forms.
FidelityReport cross_validate(const ProtocolConfig& config);

/// Reduced (path ⊗ spin) state of particle 1 before transmission, plus the
/// maximum entrywise distance of that state across a fixed probe set of
/// input qubits (six axis states and fifty pseudo-random states).
EveReport eve_information(const ProtocolConfig& config);

/// Same reduced state but with Alice's measurements performed before
/// transmission: returns the largest entrywise distance between Eve's
/// conditional states for the two probe inputs, maximized over the Alice
/// outcomes that occur for both probes. Strictly positive for generic
/// α ∈ (0, 1) and distinct probes.
double premature_measurement_leak(const ProtocolConfig& config);
double premature_measurement_leak(const ProtocolConfig& config,
                                  const std::array<Complex, 2>& probe_a,
                                  const std::array<Complex, 2>& probe_b);

/// Average-fidelity surface over the axis grids. With `validate` set, each
/// entry is cross-checked against branch enumeration.
SweepGrid sweep(const std::vector<double>& alphas,
                const std::vector<double>& gammas, bool validate = false);

/// Maximum absolute entrywise difference between two equally sized density
/// matrices.
double density_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace pathspin
