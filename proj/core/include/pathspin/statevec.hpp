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
 * Dense complex state-vector engine for a small register of labeled qubits:
 * gate application, projective measurement, fidelity, reduced density
 * matrices. All values are immutable after construction; operations return
 * new values.
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pathspin {

using Complex = std::complex<double>;

/// Numeric tolerances used across the library.
namespace tol {
/// Σ|amp|² distance from 1 accepted when constructing a state.
inline constexpr double kStateNorm = 1e-10;
/// Allowed norm drift for a single gate application.
inline constexpr double kGateNormDrift = 1e-12;
/// Entrywise tolerance of the U†U = I gate check.
inline constexpr double kUnitarity = 1e-12;
/// Below this probability a measurement branch does not occur.
inline constexpr double kZeroProbability = 1e-14;
/// |amplitude| threshold for picking the phase-canonical pivot.
inline constexpr double kPhasePivot = 1e-12;
/// Entrywise tolerance for phase-canonical state equality.
inline constexpr double kStateEquality = 1e-8;
/// Density matrices: Hermiticity, trace-1 and eigenvalue-floor tolerances.
inline constexpr double kDensityHermitian = 1e-12;
inline constexpr double kDensityTrace = 1e-10;
inline constexpr double kDensityEigenFloor = -1e-10;
}  // namespace tol

/// Raised when a forced or sampled measurement outcome has probability
/// below tol::kZeroProbability: the branch does not occur and the caller
/// must not use any post-measurement state.
class ZeroProbabilityBranch : public std::runtime_error {
 public:
  explicit ZeroProbabilityBranch(const std::string& what)
      : std::runtime_error(what) {}
};

enum class Particle { P1, P2, Aux, P3 };
enum class Dof { Path, Spin };

/**
 * @brief Identifies one qubit of the protocol register.
 *
 * Only particle 1 carries a path degree of freedom; every other particle is
 * a bare spin qubit. The five valid labels are exposed as constants below.
 */
struct QubitLabel {
  Particle particle;
  Dof dof;

  friend bool operator==(const QubitLabel& a, const QubitLabel& b) {
    return a.particle == b.particle && a.dof == b.dof;
  }
  friend bool operator!=(const QubitLabel& a, const QubitLabel& b) {
    return !(a == b);
  }
};

inline constexpr QubitLabel kP1Path{Particle::P1, Dof::Path};
inline constexpr QubitLabel kP1Spin{Particle::P1, Dof::Spin};
inline constexpr QubitLabel kP2Spin{Particle::P2, Dof::Spin};
inline constexpr QubitLabel kAuxSpin{Particle::Aux, Dof::Spin};
inline constexpr QubitLabel kP3Spin{Particle::P3, Dof::Spin};

std::string to_string(const QubitLabel& label);

/// The fixed register order used by the protocol:
/// [P1.Path, P1.Spin, P2.Spin, Aux.Spin, P3.Spin], first label most
/// significant in the amplitude index.
const std::vector<QubitLabel>& full_register();

/**
 * @brief Unitary gate on one or two qubits, validated on construction.
 *
 * Entries are stored row-major; for a two-qubit gate the row/column index
 * is (first target bit << 1) | second target bit.
 */
class Gate {
 public:
  static Gate one_qubit(const std::array<std::array<Complex, 2>, 2>& m);
  static Gate two_qubit(const std::array<std::array<Complex, 4>, 4>& m);

  std::size_t dim() const { return dim_; }
  Complex at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

 private:
  Gate(std::size_t dim, std::array<Complex, 16> entries);
  void check_unitary() const;

  std::size_t dim_;
  std::array<Complex, 16> entries_;
};

/**
 * @brief Hermitian, unit-trace, positive-semidefinite matrix produced by
 * partial tracing. Invariants are checked on construction.
 */
class DensityMatrix {
 public:
  DensityMatrix(std::size_t dim, std::vector<Complex> entries);

  std::size_t dim() const { return dim_; }
  Complex at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  const std::vector<Complex>& entries() const { return entries_; }

  double trace_real() const;
  /// tr(ρ²); equals 1 for pure states.
  double purity() const;
  /// Eigenvalues in ascending order (Jacobi on the real symmetric
  /// embedding; exact enough for the ≤32-dimensional matrices used here).
  std::vector<double> eigenvalues() const;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/**
 * @brief Measurement bases.
 *
 * Z is the computational basis. X uses |0_x⟩=(|0⟩+|1⟩)/√2 and
 * |1_x⟩=(|0⟩−|1⟩)/√2. PathAB is the Z basis of the path qubit after the
 * second beam splitter with the relabeling |a⟩↔|0⟩_p, |b⟩↔|1⟩_p; it is
 * valid only on a path qubit.
 */
enum class Basis { Z, X, PathAB };

/**
 * @brief Normalized amplitude vector over a labeled qubit register.
 *
 * Amplitude index i encodes the basis state by binary expansion with
 * labels()[0] as the most significant bit. Construction rejects duplicate
 * labels, non-finite amplitudes and vectors whose norm deviates from 1 by
 * more than tol::kStateNorm; nothing is ever renormalized silently.
 */
class StateVector {
 public:
  StateVector(std::vector<QubitLabel> labels, std::vector<Complex> amplitudes);

  std::size_t num_qubits() const { return labels_.size(); }
  std::size_t size() const { return amps_.size(); }
  const std::vector<QubitLabel>& labels() const { return labels_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_[index]; }

  /// Position of a label in the register; throws std::invalid_argument for
  /// unknown labels.
  std::size_t position(const QubitLabel& label) const;
  /// Bit shift of the label's position inside an amplitude index.
  std::size_t bit_shift(const QubitLabel& label) const {
    return labels_.size() - 1 - position(label);
  }

  double norm_squared() const;

 private:
  std::vector<QubitLabel> labels_;
  std::vector<Complex> amps_;
};

/// Result of a projective measurement branch.
struct Projection {
  double probability;
  StateVector post_state;
};

/**
 * @brief Tensor product of single-qubit states, in the given register order.
 *
 * Each component must already be normalized within tol::kStateNorm;
 * non-normalized components are rejected, never renormalized.
 */
StateVector prepare_product(
    const std::vector<std::pair<QubitLabel, std::array<Complex, 2>>>& factors);

/// Applies a one-qubit gate; norm is preserved within tol::kGateNormDrift.
StateVector apply_gate(const StateVector& state, const QubitLabel& target,
                       const Gate& gate);

/// Applies a two-qubit gate; targets[0] selects the more significant bit of
/// the gate's index.
StateVector apply_gate(const StateVector& state, const QubitLabel& target0,
                       const QubitLabel& target1, const Gate& gate);

/// Born-rule probability of measuring `outcome` (0 or 1) on one qubit.
double outcome_probability(const StateVector& state, const QubitLabel& qubit,
                           Basis basis, int outcome);

/**
 * @brief Projects one qubit onto a basis outcome and renormalizes.
 *
 * Throws ZeroProbabilityBranch when the branch probability falls below
 * tol::kZeroProbability. Projection is the only operation that
 * renormalizes.
 */
Projection project(const StateVector& state, const QubitLabel& qubit,
                   Basis basis, int outcome);

/// |⟨a|b⟩|² for pure states over identical registers (same labels, same
/// order). Invariant under a global phase of either argument.
double fidelity_pure(const StateVector& a, const StateVector& b);

/// Partial trace onto the `keep` labels (their order fixes the output
/// tensor order).
DensityMatrix reduced_density(const StateVector& state,
                              const std::vector<QubitLabel>& keep);

/// Multiplies by the unit phase that makes the first amplitude with
/// |amp| > tol::kPhasePivot real and positive.
StateVector phase_canonical(const StateVector& state);

/// Phase canonicalization of a bare qubit amplitude pair.
std::array<Complex, 2> phase_canonical(const std::array<Complex, 2>& amps);

/// Entrywise equality after phase canonicalization of both arguments.
bool phase_equal(const StateVector& a, const StateVector& b,
                 double tolerance = tol::kStateEquality);

}  // namespace pathspin
