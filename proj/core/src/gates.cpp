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

#include "pathspin/gates.hpp"

#include <cmath>

namespace pathspin {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

SplitterParams::SplitterParams(double alpha_in, double beta_in)
    : alpha(alpha_in), beta(beta_in) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("splitter amplitudes must lie in [0, 1]");
  if (std::abs(alpha * alpha + beta * beta - 1.0) > tol::kUnitarity)
    throw std::invalid_argument("splitter amplitudes must satisfy a^2+b^2=1");
}

SplitterParams SplitterParams::from_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1]");
  return SplitterParams(alpha, std::sqrt(std::max(0.0, 1.0 - alpha * alpha)));
}

Gate bs_general(const SplitterParams& p) {
  // Columns are the images of |0⟩_p and |1⟩_p.
  return Gate::one_qubit({{{kI * p.alpha, kI * p.beta},
                           {-p.beta, p.alpha}}});
}

Gate bs_5050() {
  return Gate::one_qubit({{{kInvSqrt2, kI * kInvSqrt2},
                           {kI * kInvSqrt2, kInvSqrt2}}});
}

Gate spin_flipper() {
  // Basis order |path spin⟩: 00, 01, 10, 11.
  return Gate::two_qubit({{{0, 1, 0, 0},
                           {1, 0, 0, 0},
                           {0, 0, 1, 0},
                           {0, 0, 0, 1}}});
}

Gate cnot() {
  return Gate::two_qubit({{{1, 0, 0, 0},
                           {0, 1, 0, 0},
                           {0, 0, 0, 1},
                           {0, 0, 1, 0}}});
}

Gate pauli(Pauli which) {
  switch (which) {
    case Pauli::I:
      return Gate::one_qubit({{{1, 0}, {0, 1}}});
    case Pauli::X:
      return Gate::one_qubit({{{0, 1}, {1, 0}}});
    case Pauli::Y:
      return Gate::one_qubit({{{0, -kI}, {kI, 0}}});
    case Pauli::Z:
      return Gate::one_qubit({{{1, 0}, {0, -1}}});
  }
  throw std::invalid_argument("unknown Pauli");
}

std::string to_string(Pauli p) {
  switch (p) {
    case Pauli::I: return "I";
    case Pauli::X: return "X";
    case Pauli::Y: return "Y";
    case Pauli::Z: return "Z";
  }
  return "?";
}

}  // namespace pathspin
