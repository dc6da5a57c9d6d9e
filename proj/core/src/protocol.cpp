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

#include "pathspin/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace pathspin {

namespace {
constexpr double kPurityTolerance = 1e-8;
}

// ---------------------------------------------------------------------------
// ProtocolConfig

double ProtocolConfig::beta() const {
  return std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
}

double ProtocolConfig::delta() const {
  return std::sqrt(std::max(0.0, 1.0 - gamma * gamma));
}

Complex ProtocolConfig::delta_amp() const {
  return delta() * Complex(std::cos(input_phase), std::sin(input_phase));
}

std::array<Complex, 2> ProtocolConfig::input_qubit() const {
  return {Complex(gamma, 0.0), delta_amp()};
}

void ProtocolConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in [0, 1]");
  if (!std::isfinite(input_phase))
    throw std::invalid_argument("input phase must be finite");
}

// ---------------------------------------------------------------------------
// Messages and phases

std::string to_string(ProtocolPhase phase) {
  switch (phase) {
    case ProtocolPhase::Initial: return "Initial";
    case ProtocolPhase::AfterBS1: return "AfterBS1";
    case ProtocolPhase::AfterSpinFlip: return "AfterSpinFlip";
    case ProtocolPhase::AfterAuxCnot: return "AfterAuxCnot";
    case ProtocolPhase::AfterInputCnot: return "AfterInputCnot";
    case ProtocolPhase::ParticleInTransit: return "ParticleInTransit";
    case ProtocolPhase::BobConfirmed: return "BobConfirmed";
    case ProtocolPhase::ParticleLost: return "ParticleLost";
    case ProtocolPhase::AliceMeasured: return "AliceMeasured";
    case ProtocolPhase::BobBS2Done: return "BobBS2Done";
    case ProtocolPhase::BobCnotDone: return "BobCnotDone";
    case ProtocolPhase::BobMeasured: return "BobMeasured";
    case ProtocolPhase::Corrected: return "Corrected";
    case ProtocolPhase::Recovered: return "Recovered";
  }
  return "?";
}

ClassicalMessage ClassicalMessage::receipt_confirm() {
  return {MessageKind::ReceiptConfirm, std::nullopt, std::nullopt};
}

ClassicalMessage ClassicalMessage::loss_report() {
  return {MessageKind::LossReport, std::nullopt, std::nullopt};
}

ClassicalMessage ClassicalMessage::alice_outcomes(int m2, int ma) {
  return {MessageKind::AliceOutcomes, m2, ma};
}

// ---------------------------------------------------------------------------
// Rng

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::for_run(std::uint64_t seed, std::uint64_t run_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run_index),
                    static_cast<std::uint32_t>(run_index >> 32)};
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// ProtocolRun

ProtocolRun::ProtocolRun(ProtocolConfig config) : config_(config) {
  config_.validate();
  transcript_.push_back({ProtocolPhase::Initial, std::nullopt, ""});
}

const StateVector& ProtocolRun::state() const {
  if (!state_) throw ProtocolOrderViolation("no state before prepare()");
  return *state_;
}

void ProtocolRun::require_phase(std::initializer_list<ProtocolPhase> allowed,
                                const char* operation) const {
  for (ProtocolPhase p : allowed)
    if (phase_ == p) return;
  throw ProtocolOrderViolation(std::string(operation) +
                               " called in phase " + to_string(phase_));
}

void ProtocolRun::enter(ProtocolPhase phase,
                        std::optional<ClassicalMessage> message,
                        std::string note) {
  phase_ = phase;
  transcript_.push_back({phase, std::move(message), std::move(note)});
}

void ProtocolRun::prepare() {
  require_phase({ProtocolPhase::Initial}, "prepare");
  const auto input = config_.input_qubit();
  StateVector s = prepare_product({{kP1Path, {0.0, 1.0}},
                                   {kP1Spin, {1.0, 0.0}},
                                   {kP2Spin, {input[0], input[1]}},
                                   {kAuxSpin, {1.0, 0.0}},
                                   {kP3Spin, {1.0, 0.0}}});
  s = apply_gate(s, kP1Path, bs_general(SplitterParams::from_alpha(config_.alpha)));
  state_ = s;
  enter(ProtocolPhase::AfterBS1, std::nullopt, "");
  s = apply_gate(s, kP1Path, kP1Spin, spin_flipper());
  state_ = s;
  enter(ProtocolPhase::AfterSpinFlip, std::nullopt, "");
  s = apply_gate(s, kP1Spin, kAuxSpin, cnot());
  state_ = s;
  enter(ProtocolPhase::AfterAuxCnot, std::nullopt, "");
  s = apply_gate(s, kP1Spin, kP2Spin, cnot());
  state_ = std::move(s);
  enter(ProtocolPhase::AfterInputCnot, std::nullopt, "");
}

ClassicalMessage ProtocolRun::transmit(bool lose_particle, bool intercept) {
  require_phase({ProtocolPhase::AfterInputCnot}, "transmit");
  enter(ProtocolPhase::ParticleInTransit, std::nullopt, "");
  if (intercept) {
    intercepted_ = reduced_density(*state_, {kP1Path, kP1Spin});
    const ClassicalMessage msg = ClassicalMessage::loss_report();
    enter(ProtocolPhase::ParticleLost, msg, "intercepted");
    return msg;
  }
  if (lose_particle) {
    const ClassicalMessage msg = ClassicalMessage::loss_report();
    enter(ProtocolPhase::ParticleLost, msg, "lost in transit");
    return msg;
  }
  const ClassicalMessage msg = ClassicalMessage::receipt_confirm();
  enter(ProtocolPhase::BobConfirmed, msg, "");
  return msg;
}

AliceResult ProtocolRun::alice_measure_outcomes(int m2, int ma) {
  const Projection first = project(*state_, kP2Spin, Basis::Z, m2);
  const Projection second = project(first.post_state, kAuxSpin, Basis::X, ma);
  state_ = second.post_state;
  const double joint = first.probability * second.probability;
  alice_result_ = AliceResult{m2, ma, joint};
  enter(ProtocolPhase::AliceMeasured, ClassicalMessage::alice_outcomes(m2, ma),
        "p=" + std::to_string(joint));
  return *alice_result_;
}

AliceResult ProtocolRun::alice_measure(Rng& rng) {
  require_phase({ProtocolPhase::BobConfirmed}, "alice_measure");
  const int m2 = rng.sample_bit(outcome_probability(*state_, kP2Spin, Basis::Z, 0));
  const Projection first = project(*state_, kP2Spin, Basis::Z, m2);
  const int ma = rng.sample_bit(
      outcome_probability(first.post_state, kAuxSpin, Basis::X, 0));
  return alice_measure_outcomes(m2, ma);
}

AliceResult ProtocolRun::alice_measure_forced(int m2, int ma) {
  require_phase({ProtocolPhase::BobConfirmed}, "alice_measure");
  return alice_measure_outcomes(m2, ma);
}

void ProtocolRun::bob_receive_and_process() {
  require_phase({ProtocolPhase::BobConfirmed, ProtocolPhase::AliceMeasured},
                "bob_receive_and_process");
  StateVector s = apply_gate(*state_, kP1Path, bs_5050());
  state_ = s;
  enter(ProtocolPhase::BobBS2Done, std::nullopt, "");
  s = apply_gate(s, kP1Spin, kP3Spin, cnot());
  state_ = std::move(s);
  enter(ProtocolPhase::BobCnotDone, std::nullopt, "");
}

BobResult ProtocolRun::bob_measure_outcomes(int path_bit, int spin_bit) {
  const Projection first = project(*state_, kP1Path, Basis::PathAB, path_bit);
  const Projection second =
      project(first.post_state, kP1Spin, Basis::X, spin_bit);
  state_ = second.post_state;
  const double joint = first.probability * second.probability;
  bob_result_ = BobResult{BobOutcome{path_bit, spin_bit}, joint};
  enter(ProtocolPhase::BobMeasured, std::nullopt,
        std::string(path_bit == 0 ? "a" : "b") + "," +
            (spin_bit == 0 ? "0x" : "1x"));
  return *bob_result_;
}

BobResult ProtocolRun::bob_measure(Rng& rng) {
  require_phase({ProtocolPhase::BobCnotDone}, "bob_measure");
  const int path =
      rng.sample_bit(outcome_probability(*state_, kP1Path, Basis::PathAB, 0));
  const Projection first = project(*state_, kP1Path, Basis::PathAB, path);
  const int spin = rng.sample_bit(
      outcome_probability(first.post_state, kP1Spin, Basis::X, 0));
  return bob_measure_outcomes(path, spin);
}

BobResult ProtocolRun::bob_measure_forced(int path_bit, int spin_bit) {
  require_phase({ProtocolPhase::BobCnotDone}, "bob_measure");
  return bob_measure_outcomes(path_bit, spin_bit);
}

Pauli ProtocolRun::apply_correction() {
  require_phase({ProtocolPhase::BobMeasured}, "apply_correction");
  if (!alice_result_)
    throw ProtocolOrderViolation(
        "apply_correction requires Alice's outcome message");
  const Pauli p =
      correction_for(alice_result_->m2, alice_result_->ma, bob_result_->outcome);
  state_ = apply_gate(*state_, kP3Spin, pauli(p));
  enter(ProtocolPhase::Corrected, std::nullopt, to_string(p));
  return p;
}

RecoveryResult ProtocolRun::recover_outcome(int aux_outcome) {
  const Projection proj = project(*state_, kAuxSpin, Basis::Z, aux_outcome);
  StateVector s = proj.post_state;
  if (aux_outcome == 1) s = apply_gate(s, kP2Spin, pauli(Pauli::X));
  state_ = s;
  RecoveryResult result{aux_outcome, proj.probability,
                        pure_qubit_state(s, kP2Spin)};
  enter(ProtocolPhase::Recovered, std::nullopt,
        "aux=" + std::to_string(aux_outcome));
  return result;
}

RecoveryResult ProtocolRun::recover_after_loss(Rng& rng) {
  require_phase({ProtocolPhase::ParticleLost}, "recover_after_loss");
  const int outcome =
      rng.sample_bit(outcome_probability(*state_, kAuxSpin, Basis::Z, 0));
  return recover_outcome(outcome);
}

RecoveryResult ProtocolRun::recover_after_loss_forced(int aux_outcome) {
  require_phase({ProtocolPhase::ParticleLost}, "recover_after_loss");
  return recover_outcome(aux_outcome);
}

std::array<Complex, 2> ProtocolRun::output_qubit() const {
  require_phase({ProtocolPhase::Corrected}, "output_qubit");
  return pure_qubit_state(*state_, kP3Spin);
}

// ---------------------------------------------------------------------------
// Free functions

StateVector prepared_state(const ProtocolConfig& config) {
  ProtocolRun run(config);
  run.prepare();
  return run.state();
}

Pauli correction_for(int m2, int ma, const BobOutcome& bob) {
  if ((m2 | ma | bob.path_bit | bob.spin_bit) & ~1)
    throw std::invalid_argument("measurement bits must be 0 or 1");
  const int parity = bob.path_bit ^ bob.spin_bit ^ ma;
  if (m2 == 0) return parity == 0 ? Pauli::I : Pauli::Z;
  return parity == 0 ? Pauli::X : Pauli::Y;
}

std::vector<BranchRecord> enumerate_branches(const ProtocolConfig& config) {
  config.validate();
  const auto input = config.input_qubit();
  std::vector<BranchRecord> branches;
  branches.reserve(16);
  for (int m2 = 0; m2 < 2; ++m2) {
    for (int ma = 0; ma < 2; ++ma) {
      ProtocolRun base(config);
      base.prepare();
      base.transmit(false, false);
      bool occurs = true;
      double alice_probability = 0.0;
      try {
        alice_probability = base.alice_measure_forced(m2, ma).probability;
        base.bob_receive_and_process();
      } catch (const ZeroProbabilityBranch&) {
        occurs = false;
      }
      for (int path = 0; path < 2; ++path) {
        for (int spin = 0; spin < 2; ++spin) {
          const BobOutcome bob{path, spin};
          const Pauli correction = correction_for(m2, ma, bob);
          if (!occurs) {
            branches.push_back(BranchRecord{m2, ma, bob, 0.0, correction,
                                            {Complex(0.0), Complex(0.0)},
                                            std::nullopt});
            continue;
          }
          ProtocolRun fork = base;
          const BobResult bob_result = fork.bob_measure_forced(path, spin);
          fork.apply_correction();
          const auto output = fork.output_qubit();
          branches.push_back(
              BranchRecord{m2, ma, bob,
                           alice_probability * bob_result.probability,
                           correction, output, qubit_fidelity(input, output)});
        }
      }
    }
  }
  return branches;
}

std::vector<RunRecord> run_sampled(const ProtocolConfig& config,
                                   std::size_t n_runs) {
  config.validate();
  if (n_runs < 1) throw std::invalid_argument("n_runs must be at least 1");
  const auto input = config.input_qubit();
  std::vector<RunRecord> records;
  records.reserve(n_runs);
  for (std::size_t k = 0; k < n_runs; ++k) {
    Rng rng = Rng::for_run(config.seed, k);
    ProtocolRun run(config);
    run.prepare();
    run.transmit(false, false);
    const AliceResult alice = run.alice_measure(rng);
    run.bob_receive_and_process();
    const BobResult bob = run.bob_measure(rng);
    const Pauli correction = run.apply_correction();
    const auto output = run.output_qubit();
    records.push_back(RunRecord{k, alice.m2, alice.ma, bob.outcome, correction,
                                output, qubit_fidelity(input, output)});
  }
  return records;
}

double qubit_fidelity(const std::array<Complex, 2>& a,
                      const std::array<Complex, 2>& b) {
  const Complex overlap = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
  return std::min(1.0, std::norm(overlap));
}

std::array<Complex, 2> pure_qubit_state(const StateVector& state,
                                        const QubitLabel& qubit) {
  const DensityMatrix rho = reduced_density(state, {qubit});
  if (std::abs(rho.purity() - 1.0) > kPurityTolerance)
    throw std::logic_error(to_string(qubit) +
                           " is not in a pure state (purity " +
                           std::to_string(rho.purity()) + ")");
  // ψψ† = ρ: read ψ off the column with the largest diagonal entry.
  const std::size_t pivot = rho.at(0, 0).real() >= rho.at(1, 1).real() ? 0 : 1;
  const double norm = std::sqrt(rho.at(pivot, pivot).real());
  return phase_canonical(std::array<Complex, 2>{rho.at(0, pivot) / norm,
                                                rho.at(1, pivot) / norm});
}

}  // namespace pathspin
