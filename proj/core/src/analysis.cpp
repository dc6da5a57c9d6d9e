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

#include "pathspin/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace pathspin {

namespace {

constexpr double kDegenerateCutoff = 1e-14;
// Fixed probe-set seed; the probe states feed reproducibility-sensitive
// independence checks.
constexpr std::uint64_t kProbeSeed = 0x9e3779b97f4a7c15ULL;

// A probe input expressed as (gamma, delta magnitude, phase on delta).
struct ProbeInput {
  double gamma;
  double phase;
};

ProtocolConfig with_input(const ProtocolConfig& base, const ProbeInput& probe) {
  ProtocolConfig cfg = base;
  cfg.gamma = probe.gamma;
  cfg.input_phase = probe.phase;
  return cfg;
}

// Six axis states plus fifty pseudo-random Bloch-sphere points.
std::vector<ProbeInput> probe_set() {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  constexpr double kPi = 3.14159265358979323846;
  std::vector<ProbeInput> probes = {
      {1.0, 0.0},                 // |0⟩
      {0.0, 0.0},                 // |1⟩
      {kInvSqrt2, 0.0},           // |+x⟩
      {kInvSqrt2, kPi},           // |−x⟩
      {kInvSqrt2, kPi / 2.0},     // |+y⟩
      {kInvSqrt2, 3 * kPi / 2.0}, // |−y⟩
  };
  Rng rng(kProbeSeed);
  for (int k = 0; k < 50; ++k) {
    const double z = 2.0 * rng.uniform() - 1.0;  // uniform polar cosine
    const double theta = std::acos(z);
    probes.push_back({std::cos(theta / 2.0), 2.0 * kPi * rng.uniform()});
  }
  return probes;
}

DensityMatrix eve_state(const ProtocolConfig& config) {
  return reduced_density(prepared_state(config), {kP1Path, kP1Spin});
}

ProbeInput as_probe(const std::array<Complex, 2>& qubit) {
  const double norm = std::sqrt(std::norm(qubit[0]) + std::norm(qubit[1]));
  if (norm < 1e-12)
    throw std::invalid_argument("probe input must be a nonzero qubit state");
  // Strip the global phase so that the |0⟩ amplitude is real nonnegative.
  const Complex a0 = qubit[0] / norm;
  const Complex a1 = qubit[1] / norm;
  const double gamma = std::abs(a0);
  if (gamma < 1e-12) return {0.0, 0.0};
  const Complex rel = a1 * std::conj(a0) / gamma;
  return {gamma, std::atan2(rel.imag(), rel.real())};
}

}  // namespace

double density_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("density matrices must have equal dimension");
  double dist = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    dist = std::max(dist, std::abs(a.entries()[i] - b.entries()[i]));
  return dist;
}

double fidelity_case(int m2, const ProtocolConfig& config) {
  config.validate();
  if (m2 != 0 && m2 != 1) throw std::invalid_argument("m2 must be 0 or 1");
  const double a = config.alpha;
  const double b = config.beta();
  const double g = config.gamma;
  const double d = config.delta();
  const double g2 = g * g;
  const double d2 = d * d;
  const double numerator_root = m2 == 0 ? a * g2 + b * d2 : b * g2 + a * d2;
  const double denominator =
      m2 == 0 ? a * a * g2 + b * b * d2 : b * b * g2 + a * a * d2;
  if (denominator < kDegenerateCutoff)
    throw DegenerateBranch("case m2=" + std::to_string(m2) +
                           " has vanishing probability");
  return numerator_root * numerator_root / denominator;
}

double average_fidelity_formula(const ProtocolConfig& config) {
  config.validate();
  if (config.input_phase != 0.0)
    throw std::invalid_argument(
        "the average-fidelity formula assumes a real input (phase 0)");
  const double a = config.alpha;
  const double b = config.beta();
  const double g2 = config.gamma * config.gamma;
  const double d2 = config.delta() * config.delta();
  return g2 * g2 + d2 * d2 + 4.0 * a * b * g2 * d2;
}

FidelityReport cross_validate(const ProtocolConfig& config) {
  config.validate();
  if (config.input_phase != 0.0)
    throw std::invalid_argument(
        "cross validation compares against the real-input formula (phase 0)");
  FidelityReport report;
  report.per_branch = enumerate_branches(config);
  for (int m2 = 0; m2 < 2; ++m2) {
    std::optional<double> value;
    try {
      value = fidelity_case(m2, config);
    } catch (const DegenerateBranch&) {
    }
    (m2 == 0 ? report.case_fidelity_m2_0 : report.case_fidelity_m2_1) = value;
  }
  double weighted = 0.0;
  for (const BranchRecord& branch : report.per_branch)
    if (branch.fidelity) weighted += branch.probability * *branch.fidelity;
  report.average_enumerated = weighted;
  report.average_formula = average_fidelity_formula(config);
  report.max_abs_disagreement =
      std::abs(report.average_formula - report.average_enumerated);
  return report;
}

EveReport eve_information(const ProtocolConfig& config) {
  config.validate();
  DensityMatrix rho = eve_state(config);
  std::vector<DensityMatrix> states;
  states.push_back(rho);
  for (const ProbeInput& probe : probe_set())
    states.push_back(eve_state(with_input(config, probe)));
  double independence = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      independence = std::max(independence,
                              density_distance(states[i], states[j]));
  return EveReport{std::move(rho), independence};
}

double premature_measurement_leak(const ProtocolConfig& config) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  return premature_measurement_leak(
      config, {Complex(1.0), Complex(0.0)},
      {Complex(kInvSqrt2), Complex(kInvSqrt2)});
}

double premature_measurement_leak(const ProtocolConfig& config,
                                  const std::array<Complex, 2>& probe_a,
                                  const std::array<Complex, 2>& probe_b) {
  config.validate();
  const ProbeInput inputs[2] = {as_probe(probe_a), as_probe(probe_b)};
  double leak = 0.0;
  // Alice measures before sending; Eve then intercepts and, knowing the
  // classical outcome, holds a conditional (path ⊗ spin) state. Compare the
  // two probes outcome by outcome, over outcomes possible for both.
  for (int m2 = 0; m2 < 2; ++m2) {
    for (int ma = 0; ma < 2; ++ma) {
      std::optional<DensityMatrix> conditional[2];
      for (int which = 0; which < 2; ++which) {
        const StateVector prepared =
            prepared_state(with_input(config, inputs[which]));
        try {
          const Projection first = project(prepared, kP2Spin, Basis::Z, m2);
          const Projection second =
              project(first.post_state, kAuxSpin, Basis::X, ma);
          conditional[which] =
              reduced_density(second.post_state, {kP1Path, kP1Spin});
        } catch (const ZeroProbabilityBranch&) {
        }
      }
      if (conditional[0] && conditional[1])
        leak = std::max(leak,
                        density_distance(*conditional[0], *conditional[1]));
    }
  }
  return leak;
}

SweepGrid sweep(const std::vector<double>& alphas,
                const std::vector<double>& gammas, bool validate) {
  if (alphas.empty() || gammas.empty())
    throw std::invalid_argument("sweep axes must be non-empty");
  SweepGrid grid;
  grid.alphas = alphas;
  grid.gammas = gammas;
  grid.values.resize(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    grid.values[i].resize(gammas.size());
    for (std::size_t j = 0; j < gammas.size(); ++j) {
      ProtocolConfig cfg;
      cfg.alpha = alphas[i];
      cfg.gamma = gammas[j];
      if (validate) {
        const FidelityReport report = cross_validate(cfg);
        if (report.max_abs_disagreement > 1e-10)
          throw std::logic_error("sweep validation failed at alpha=" +
                                 std::to_string(cfg.alpha) + " gamma=" +
                                 std::to_string(cfg.gamma));
        grid.values[i][j] = report.average_formula;
      } else {
        grid.values[i][j] = average_fidelity_formula(cfg);
      }
    }
  }
  return grid;
}

}  // namespace pathspin
