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
 * Closed-form constructors for every unitary the protocol uses.
 */

#pragma once

#include "pathspin/statevec.hpp"

namespace pathspin {

/**
 * @brief Real beam-splitter amplitudes with α² + β² = 1.
 *
 * α² and β² are the reflection and transmission probabilities of the first
 * beam splitter.
 */
struct SplitterParams {
  double alpha;
  double beta;

  SplitterParams(double alpha, double beta);
  /// Derives β = √(1−α²) so the normalization cannot be violated.
  static SplitterParams from_alpha(double alpha);
};

/// General beam splitter on the path qubit:
/// U|1⟩_p = α|1⟩_p + iβ|0⟩_p, U|0⟩_p = −β|1⟩_p + iα|0⟩_p.
Gate bs_general(const SplitterParams& params);

/// Bob's 50-50 beam splitter under the relabeling |a⟩↔|0⟩_p, |b⟩↔|1⟩_p:
/// U|0⟩_p = (|a⟩ + i|b⟩)/√2, U|1⟩_p = (|b⟩ + i|a⟩)/√2.
Gate bs_5050();

/// Spin flipper in the reflected channel: X on the spin when the path qubit
/// is |0⟩_p, identity when it is |1⟩_p. Targets are (path, spin) with the
/// path qubit the more significant gate index bit.
Gate spin_flipper();

/// CNOT with the first target as control: X on the second target when the
/// control is |1⟩.
Gate cnot();

enum class Pauli { I, X, Y, Z };

/// Standard Pauli matrices; Y = [[0, −i], [i, 0]].
Gate pauli(Pauli which);

std::string to_string(Pauli p);

}  // namespace pathspin
