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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pathspin/gates.hpp"

using namespace pathspin;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
const Complex kI(0.0, 1.0);

oracle::Mat to_mat(const Gate& g) {
  oracle::Mat m(g.dim(), oracle::Vec(g.dim()));
  for (std::size_t r = 0; r < g.dim(); ++r)
    for (std::size_t c = 0; c < g.dim(); ++c) m[r][c] = g.at(r, c);
  return m;
}
}  // namespace

TEST_CASE("bs_general columns and limits") {
  // Fully reflecting limit: transmitted port passes through, reflected port
  // picks up the i.
  const Gate full = bs_general(SplitterParams(1.0, 0.0));
  CHECK(full.at(1, 1) == Complex(1.0));
  CHECK(full.at(0, 0) == kI);
  CHECK(full.at(0, 1) == Complex(0.0));
  CHECK(full.at(1, 0) == Complex(0.0));

  // 50-50: U|1> = (|1> + i|0>)/sqrt2.
  const Gate half = bs_general(SplitterParams(kInvSqrt2, kInvSqrt2));
  CHECK(std::abs(half.at(0, 1) - kI * kInvSqrt2) < 1e-15);
  CHECK(std::abs(half.at(1, 1) - Complex(kInvSqrt2)) < 1e-15);

  CHECK_THROWS_AS(SplitterParams(0.9, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(SplitterParams(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SplitterParams::from_alpha(1.5), std::invalid_argument);
}

TEST_CASE("bs_general is unitary across 100 random splitting ratios") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const Gate g = bs_general(SplitterParams::from_alpha(uniform(rng)));
    const oracle::Mat product = oracle::matmul(oracle::dagger(to_mat(g)),
                                               to_mat(g));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c)
        CHECK(std::abs(product[r][c] - (r == c ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("bs_5050 matches its two defining lines") {
  const Gate g = bs_5050();
  // |0>_p -> (|a> + i|b>)/sqrt2 with a<->0, b<->1.
  CHECK(std::abs(g.at(0, 0) - Complex(kInvSqrt2)) < 1e-15);
  CHECK(std::abs(g.at(1, 0) - kI * kInvSqrt2) < 1e-15);
  // |1>_p -> (|b> + i|a>)/sqrt2.
  CHECK(std::abs(g.at(0, 1) - kI * kInvSqrt2) < 1e-15);
  CHECK(std::abs(g.at(1, 1) - Complex(kInvSqrt2)) < 1e-15);
}

TEST_CASE("spin_flipper acts only in the reflected channel") {
  const Gate g = spin_flipper();
  // |0>_p|0>_s -> |0>_p|1>_s
  CHECK(g.at(0b01, 0b00) == Complex(1.0));
  // |1>_p|0>_s unchanged
  CHECK(g.at(0b10, 0b10) == Complex(1.0));
  CHECK(g.at(0b11, 0b10) == Complex(0.0));

  // After the splitter on |1>_p|0>_s the amplitude vector in (path, spin)
  // order is (0, i*beta, alpha, 0).
  const double alpha = 0.6, beta = 0.8;
  const StateVector in =
      prepare_product({{kP1Path, {0.0, 1.0}}, {kP1Spin, {1.0, 0.0}}});
  const StateVector split =
      apply_gate(in, kP1Path, bs_general(SplitterParams(alpha, beta)));
  const StateVector out = apply_gate(split, kP1Path, kP1Spin, spin_flipper());
  CHECK(std::abs(out.amplitude(0b00)) < 1e-15);
  CHECK(std::abs(out.amplitude(0b01) - kI * beta) < 1e-15);
  CHECK(std::abs(out.amplitude(0b10) - Complex(alpha)) < 1e-15);
  CHECK(std::abs(out.amplitude(0b11)) < 1e-15);
}

TEST_CASE("spin_flipper maps the split state to the entangled state on a grid") {
  for (int k = 0; k <= 20; ++k) {
    const double alpha = k / 20.0;
    const double beta = std::sqrt(1 - alpha * alpha);
    const StateVector in =
        prepare_product({{kP1Path, {0.0, 1.0}}, {kP1Spin, {1.0, 0.0}}});
    const StateVector split =
        apply_gate(in, kP1Path, bs_general(SplitterParams::from_alpha(alpha)));
    const StateVector out =
        apply_gate(split, kP1Path, kP1Spin, spin_flipper());
    // alpha|1>|0> + i beta|0>|1>
    CHECK(std::abs(out.amplitude(0b10) - Complex(alpha)) < 1e-14);
    CHECK(std::abs(out.amplitude(0b01) - kI * beta) < 1e-14);
  }
}

TEST_CASE("cnot truth table") {
  const Gate g = cnot();
  CHECK(g.at(0b11, 0b10) == Complex(1.0));  // |1 0> -> |1 1>
  CHECK(g.at(0b01, 0b01) == Complex(1.0));  // |0 1> fixed
  CHECK(g.at(0b00, 0b00) == Complex(1.0));
  CHECK(g.at(0b10, 0b11) == Complex(1.0));
}

TEST_CASE("pauli matrices and phase conventions") {
  const StateVector s = prepare_product({{kP1Spin, {0.6, 0.8}}});
  const StateVector z = apply_gate(s, kP1Spin, pauli(Pauli::Z));
  CHECK(std::abs(z.amplitude(0) - Complex(0.6)) < 1e-15);
  CHECK(std::abs(z.amplitude(1) - Complex(-0.8)) < 1e-15);

  const StateVector zero = prepare_product({{kP1Spin, {1.0, 0.0}}});
  const StateVector y = apply_gate(zero, kP1Spin, pauli(Pauli::Y));
  CHECK(std::abs(y.amplitude(1) - kI) < 1e-15);

  // X maps the (alpha delta, beta gamma) branch onto the tabulated output.
  const double alpha = 0.6, beta = 0.8, gamma = 0.8, delta = 0.6;
  const double norm = std::sqrt(alpha * alpha * delta * delta +
                                beta * beta * gamma * gamma);
  const StateVector branch({kP3Spin},
                           {alpha * delta / norm, beta * gamma / norm});
  const StateVector corrected = apply_gate(branch, kP3Spin, pauli(Pauli::X));
  CHECK(std::abs(corrected.amplitude(0) - Complex(beta * gamma / norm)) <
        1e-15);
  CHECK(std::abs(corrected.amplitude(1) - Complex(alpha * delta / norm)) <
        1e-15);

  // X Z = -i Y entrywise.
  const oracle::Mat xz =
      oracle::matmul(to_mat(pauli(Pauli::X)), to_mat(pauli(Pauli::Z)));
  const oracle::Mat y_mat = to_mat(pauli(Pauli::Y));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      CHECK(std::abs(xz[r][c] - (-kI) * y_mat[r][c]) < 1e-15);
}

TEST_CASE("every constructor passes the unitarity invariant") {
  // Construction itself enforces U+U = I at 1e-12; touch each factory.
  CHECK(bs_general(SplitterParams::from_alpha(0.3)).dim() == 2);
  CHECK(bs_5050().dim() == 2);
  CHECK(spin_flipper().dim() == 4);
  CHECK(cnot().dim() == 4);
  for (const Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z})
    CHECK(pauli(p).dim() == 2);
}
