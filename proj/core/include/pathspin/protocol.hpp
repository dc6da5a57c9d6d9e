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
 * Two-party state machine for the path-spin state-transfer protocol:
 * preparation, transmission (with loss and interception), Alice's and Bob's
 * measurements, classical messaging, Pauli corrections, branch enumeration,
 * Monte Carlo sampling and the loss-recovery path.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pathspin/gates.hpp"
#include "pathspin/statevec.hpp"

namespace pathspin {

/// Raised when a protocol operation is invoked out of order.
class ProtocolOrderViolation : public std::logic_error {
 public:
  explicit ProtocolOrderViolation(const std::string& what)
      : std::logic_error(what) {}
};

enum class Mode { Enumerate, Sample };

/**
 * @brief Protocol parameters. β and the magnitude of δ are derived from the
 * normalization constraints, so they cannot be set inconsistently.
 *
 * `input_phase` is an optional phase on δ: the unknown input qubit is
 * γ|0⟩ + δ·e^{iφ}|1⟩ with γ, δ ≥ 0.
 */
struct ProtocolConfig {
  double alpha = 0.70710678118654752440;
  double gamma = 0.70710678118654752440;
  double input_phase = 0.0;
  std::uint64_t seed = 0;
  Mode mode = Mode::Enumerate;

  double beta() const;
  double delta() const;
  /// δ·e^{iφ}, the |1⟩ amplitude of the input qubit.
  Complex delta_amp() const;
  /// The unknown input qubit (γ, δ·e^{iφ}).
  std::array<Complex, 2> input_qubit() const;

  /// Throws std::invalid_argument unless 0 ≤ α ≤ 1, 0 ≤ γ ≤ 1 and φ finite.
  void validate() const;
};

enum class ProtocolPhase {
  Initial,
  AfterBS1,
  AfterSpinFlip,
  AfterAuxCnot,
  AfterInputCnot,
  ParticleInTransit,
  BobConfirmed,
  ParticleLost,
  AliceMeasured,
  BobBS2Done,
  BobCnotDone,
  BobMeasured,
  Corrected,
  Recovered,
};

std::string to_string(ProtocolPhase phase);

enum class MessageKind { ReceiptConfirm, LossReport, AliceOutcomes };

/// One classical message on the Alice-Bob channel. The measurement bits are
/// present only for AliceOutcomes.
struct ClassicalMessage {
  MessageKind kind;
  std::optional<int> m2;  // SG1, z basis, particle 2
  std::optional<int> ma;  // SGA, x basis, auxiliary particle

  static ClassicalMessage receipt_confirm();
  static ClassicalMessage loss_report();
  static ClassicalMessage alice_outcomes(int m2, int ma);
};

/// Bob's joint measurement outcome: path in the a/b basis (0 = |a⟩,
/// 1 = |b⟩) and particle-1 spin in the x basis.
struct BobOutcome {
  int path_bit;
  int spin_bit;

  friend bool operator==(const BobOutcome& a, const BobOutcome& b) {
    return a.path_bit == b.path_bit && a.spin_bit == b.spin_bit;
  }
};

struct AliceResult {
  int m2;
  int ma;
  double probability;  // joint probability of the (m2, ma) pair
};

struct BobResult {
  BobOutcome outcome;
  double probability;  // joint probability of the (path, spin) pair
};

struct RecoveryResult {
  int aux_outcome;
  double probability;
  std::array<Complex, 2> recovered_input;  // particle-2 state, phase-canonical
};

/// One step of a protocol run, for transcripts: the phase entered, an
/// optional classical message sent at that step and a free-form note.
struct TranscriptEvent {
  ProtocolPhase phase;
  std::optional<ClassicalMessage> message;
  std::string note;
};

/**
 * @brief Deterministic, seedable random source.
 *
 * std::mt19937_64 with uniforms drawn as (x >> 11)·2⁻⁵³, which is fully
 * specified by the standard and therefore stable across platforms and
 * library versions. Per-run streams derive from (seed, run_index) through
 * std::seed_seq.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng for_run(std::uint64_t seed, std::uint64_t run_index);

  /// Uniform double in [0, 1).
  double uniform();
  /// 0 with probability p0, else 1.
  int sample_bit(double p0) { return uniform() < p0 ? 0 : 1; }

 private:
  std::mt19937_64 engine_;
};

/**
 * @brief A single protocol execution over the five-qubit register.
 *
 * Value-semantic: copying a run forks it, which is how the enumerator
 * traverses all measurement branches with forced outcomes. Any call that
 * does not match the current phase throws ProtocolOrderViolation.
 *
 * Allowed transitions:
 *   Initial → AfterInputCnot                    (prepare)
 *   AfterInputCnot → BobConfirmed|ParticleLost  (transmit)
 *   BobConfirmed → AliceMeasured                (alice_measure)
 *   BobConfirmed|AliceMeasured → BobCnotDone    (bob_receive_and_process)
 *   BobCnotDone → BobMeasured                   (bob_measure)
 *   BobMeasured → Corrected                     (apply_correction; needs
 *                                                Alice's classical bits)
 *   ParticleLost → Recovered                    (recover_after_loss)
 */
class ProtocolRun {
 public:
  explicit ProtocolRun(ProtocolConfig config);

  ProtocolPhase phase() const { return phase_; }
  const ProtocolConfig& config() const { return config_; }
  const StateVector& state() const;
  const std::vector<TranscriptEvent>& transcript() const { return transcript_; }

  /// Alice's preparation pipeline: BS1, spin flipper, auxiliary CNOT, input
  /// CNOT. The CNOTs act after the beam splitter, on whichever path branch
  /// carries the particle; the phase machine hard-codes this order.
  void prepare();

  /// Sends particle 1. Returns Bob's receipt confirmation, or a loss report
  /// when the particle is lost or intercepted. Interception additionally
  /// records the reduced (path ⊗ spin) state handed to the eavesdropper.
  ClassicalMessage transmit(bool lose_particle, bool intercept);

  /// Measures particle 2 in Z and the auxiliary spin in X, then puts the
  /// outcome message on the classical channel.
  AliceResult alice_measure(Rng& rng);
  AliceResult alice_measure_forced(int m2, int ma);

  /// Bob's 50-50 beam splitter on the path qubit followed by the CNOT with
  /// particle-1 spin as control and particle-3 spin as target.
  void bob_receive_and_process();

  /// Measures the path in the a/b basis and particle-1 spin in X.
  BobResult bob_measure(Rng& rng);
  BobResult bob_measure_forced(int path_bit, int spin_bit);

  /// Applies the Pauli selected by Alice's classical bits and Bob's own
  /// outcome. Throws if Alice's outcome message was never produced.
  Pauli apply_correction();

  /// Alice's loss-recovery path: measures the auxiliary spin in Z and
  /// applies X to particle 2 on outcome 1.
  RecoveryResult recover_after_loss(Rng& rng);
  RecoveryResult recover_after_loss_forced(int aux_outcome);

  /// Particle-3 output qubit after the correction, phase-canonical.
  std::array<Complex, 2> output_qubit() const;

  /// Reduced state handed to Eve; set only after an intercepted transmit.
  const std::optional<DensityMatrix>& intercepted_state() const {
    return intercepted_;
  }

 private:
  void require_phase(std::initializer_list<ProtocolPhase> allowed,
                     const char* operation) const;
  void enter(ProtocolPhase phase, std::optional<ClassicalMessage> message,
             std::string note);
  AliceResult alice_measure_outcomes(int m2, int ma);
  BobResult bob_measure_outcomes(int path_bit, int spin_bit);
  RecoveryResult recover_outcome(int aux_outcome);

  ProtocolConfig config_;
  ProtocolPhase phase_ = ProtocolPhase::Initial;
  std::optional<StateVector> state_;
  std::optional<AliceResult> alice_result_;
  std::optional<BobResult> bob_result_;
  std::optional<DensityMatrix> intercepted_;
  std::vector<TranscriptEvent> transcript_;
};

/// The joint five-qubit state after Alice's preparation pipeline (the
/// pre-transmission state), as a pure function of the configuration.
StateVector prepared_state(const ProtocolConfig& config);

/// Correction table keyed on the measured bits: with parity
/// p = path ⊕ spin ⊕ ma, m2 = 0 selects I (p = 0) or Z (p = 1) and m2 = 1
/// selects X (p = 0) or Y (p = 1).
Pauli correction_for(int m2, int ma, const BobOutcome& bob);

/// One of the 16 measurement branches. Branches that cannot occur are
/// recorded with probability 0 and an empty fidelity.
struct BranchRecord {
  int m2;
  int ma;
  BobOutcome bob;
  double probability;
  Pauli correction;
  std::array<Complex, 2> output_state;
  std::optional<double> fidelity;
};

/// Exhaustive forced-outcome traversal of all 16 branches.
std::vector<BranchRecord> enumerate_branches(const ProtocolConfig& config);

/// One sampled protocol execution.
struct RunRecord {
  std::uint64_t run_index;
  int m2;
  int ma;
  BobOutcome bob;
  Pauli correction;
  std::array<Complex, 2> output_state;
  double fidelity;
};

/// n_runs independent sampled executions; deterministic for a fixed seed,
/// with the run at index k drawn from the (seed, k) stream.
std::vector<RunRecord> run_sampled(const ProtocolConfig& config,
                                   std::size_t n_runs);

/// |⟨a|b⟩|² for bare qubit amplitude pairs.
double qubit_fidelity(const std::array<Complex, 2>& a,
                      const std::array<Complex, 2>& b);

/// The pure state of a single register qubit, extracted through its reduced
/// density matrix; throws std::logic_error when that qubit is entangled
/// with the rest of the register. Phase-canonical.
std::array<Complex, 2> pure_qubit_state(const StateVector& state,
                                        const QubitLabel& qubit);

}  // namespace pathspin
