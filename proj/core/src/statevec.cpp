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

#include "pathspin/statevec.hpp"

#include <algorithm>
#include <cmath>

namespace pathspin {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Eigenvalues of an n×n real symmetric matrix via cyclic Jacobi sweeps.
// Sufficient for the tiny matrices produced by partial tracing.
std::vector<double> jacobi_symmetric_eigenvalues(std::size_t n,
                                                 std::vector<double> m) {
  auto at = [&](std::size_t r, std::size_t c) -> double& {
    return m[r * n + c];
  };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) off += std::abs(at(r, c));
    if (off < 1e-15) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-18) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = at(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

int basis_component_count(Basis basis) {
  return basis == Basis::X ? 2 : 1;
}

void check_outcome_bit(int outcome) {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("measurement outcome must be 0 or 1");
}

void check_basis_valid(const QubitLabel& qubit, Basis basis) {
  if (basis == Basis::PathAB && qubit.dof != Dof::Path)
    throw std::invalid_argument("PathAB basis applies only to the path qubit");
}

}  // namespace

std::string to_string(const QubitLabel& label) {
  std::string particle;
  switch (label.particle) {
    case Particle::P1: particle = "p1"; break;
    case Particle::P2: particle = "p2"; break;
    case Particle::Aux: particle = "aux"; break;
    case Particle::P3: particle = "p3"; break;
  }
  return particle + (label.dof == Dof::Path ? ".path" : ".spin");
}

const std::vector<QubitLabel>& full_register() {
  static const std::vector<QubitLabel> reg = {kP1Path, kP1Spin, kP2Spin,
                                              kAuxSpin, kP3Spin};
  return reg;
}

// ---------------------------------------------------------------------------
// Gate

Gate::Gate(std::size_t dim, std::array<Complex, 16> entries)
    : dim_(dim), entries_(entries) {
  check_unitary();
}

Gate Gate::one_qubit(const std::array<std::array<Complex, 2>, 2>& m) {
  std::array<Complex, 16> e{};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) e[r * 2 + c] = m[r][c];
  return Gate(2, e);
}

Gate Gate::two_qubit(const std::array<std::array<Complex, 4>, 4>& m) {
  std::array<Complex, 16> e{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) e[r * 4 + c] = m[r][c];
  return Gate(4, e);
}

void Gate::check_unitary() const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (!is_finite(at(r, c)))
        throw std::invalid_argument("gate entries must be finite");
      Complex dot = 0.0;
      for (std::size_t k = 0; k < dim_; ++k)
        dot += std::conj(at(k, r)) * at(k, c);
      const Complex expected = (r == c) ? 1.0 : 0.0;
      if (std::abs(dot - expected) > tol::kUnitarity)
        throw std::invalid_argument("gate is not unitary within tolerance");
    }
  }
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0 || (dim_ & (dim_ - 1)) != 0)
    throw std::invalid_argument("density matrix dimension must be 2^k");
  if (entries_.size() != dim_ * dim_)
    throw std::invalid_argument("density matrix entry count mismatch");
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (!is_finite(at(r, c)))
        throw std::invalid_argument("density matrix entries must be finite");
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol::kDensityHermitian)
        throw std::invalid_argument("density matrix is not Hermitian");
    }
  }
  if (std::abs(trace_real() - 1.0) > tol::kDensityTrace)
    throw std::invalid_argument("density matrix trace differs from 1");
  if (eigenvalues().front() < tol::kDensityEigenFloor)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

double DensityMatrix::trace_real() const {
  double tr = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) tr += at(i, i).real();
  return tr;
}

double DensityMatrix::purity() const {
  // tr(ρ²) = Σ|ρ_rc|² for Hermitian ρ.
  double p = 0.0;
  for (const Complex& z : entries_) p += std::norm(z);
  return p;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  // Hermitian H = A + iB embeds into the real symmetric [[A, -B], [B, A]],
  // whose spectrum is that of H with doubled multiplicity.
  const std::size_t n = 2 * dim_;
  std::vector<double> m(n * n, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const Complex z = at(r, c);
      m[r * n + c] = z.real();
      m[(r + dim_) * n + (c + dim_)] = z.real();
      m[r * n + (c + dim_)] = -z.imag();
      m[(r + dim_) * n + c] = z.imag();
    }
  }
  const std::vector<double> doubled = jacobi_symmetric_eigenvalues(n, m);
  std::vector<double> eigs(dim_);
  for (std::size_t i = 0; i < dim_; ++i) eigs[i] = doubled[2 * i];
  return eigs;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<QubitLabel> labels,
                         std::vector<Complex> amplitudes)
    : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
  if (labels_.empty()) throw std::invalid_argument("register must be non-empty");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].dof == Dof::Path && labels_[i].particle != Particle::P1)
      throw std::invalid_argument("only particle 1 carries a path qubit");
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j])
        throw std::invalid_argument("duplicate qubit label: " +
                                    to_string(labels_[i]));
  }
  if (amps_.size() != (std::size_t{1} << labels_.size()))
    throw std::invalid_argument("amplitude count must be 2^(register size)");
  for (const Complex& a : amps_)
    if (!is_finite(a))
      throw std::invalid_argument("state amplitudes must be finite");
  if (std::abs(norm_squared() - 1.0) > tol::kStateNorm)
    throw std::invalid_argument("state vector is not normalized");
}

std::size_t StateVector::position(const QubitLabel& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw std::invalid_argument("label not in register: " + to_string(label));
}

double StateVector::norm_squared() const {
  double n = 0.0;
  for (const Complex& a : amps_) n += std::norm(a);
  return n;
}

// ---------------------------------------------------------------------------
// Operations

StateVector prepare_product(
    const std::vector<std::pair<QubitLabel, std::array<Complex, 2>>>& factors) {
  if (factors.empty())
    throw std::invalid_argument("product state needs at least one factor");
  std::vector<QubitLabel> labels;
  labels.reserve(factors.size());
  for (const auto& [label, amps] : factors) {
    const double norm = std::norm(amps[0]) + std::norm(amps[1]);
    if (!is_finite(amps[0]) || !is_finite(amps[1]) ||
        std::abs(norm - 1.0) > tol::kStateNorm)
      throw std::invalid_argument("component state for " + to_string(label) +
                                  " is not normalized");
    labels.push_back(label);
  }
  std::vector<Complex> amps{1.0};
  for (const auto& [label, factor] : factors) {
    std::vector<Complex> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * factor[0];
      next[2 * i + 1] = amps[i] * factor[1];
    }
    amps = std::move(next);
  }
  return StateVector(std::move(labels), std::move(amps));
}

StateVector apply_gate(const StateVector& state, const QubitLabel& target,
                       const Gate& gate) {
  if (gate.dim() != 2)
    throw std::invalid_argument("one target requires a 2x2 gate");
  const std::size_t shift = state.bit_shift(target);
  const std::size_t mask = std::size_t{1} << shift;
  std::vector<Complex> amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | mask];
    amps[i] = gate.at(0, 0) * a0 + gate.at(0, 1) * a1;
    amps[i | mask] = gate.at(1, 0) * a0 + gate.at(1, 1) * a1;
  }
  StateVector out(state.labels(), std::move(amps));
  if (std::abs(out.norm_squared() - state.norm_squared()) > tol::kGateNormDrift)
    throw std::logic_error("gate application drifted the state norm");
  return out;
}

StateVector apply_gate(const StateVector& state, const QubitLabel& target0,
                       const QubitLabel& target1, const Gate& gate) {
  if (gate.dim() != 4)
    throw std::invalid_argument("two targets require a 4x4 gate");
  if (target0 == target1)
    throw std::invalid_argument("two-qubit gate targets must differ");
  const std::size_t shift0 = state.bit_shift(target0);
  const std::size_t shift1 = state.bit_shift(target1);
  const std::size_t mask0 = std::size_t{1} << shift0;
  const std::size_t mask1 = std::size_t{1} << shift1;
  std::vector<Complex> amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask0) || (i & mask1)) continue;
    std::array<std::size_t, 4> idx = {i, i | mask1, i | mask0,
                                      i | mask0 | mask1};
    std::array<Complex, 4> in;
    for (int k = 0; k < 4; ++k) in[k] = amps[idx[k]];
    for (int r = 0; r < 4; ++r) {
      Complex sum = 0.0;
      for (int c = 0; c < 4; ++c) sum += gate.at(r, c) * in[c];
      amps[idx[r]] = sum;
    }
  }
  StateVector out(state.labels(), std::move(amps));
  if (std::abs(out.norm_squared() - state.norm_squared()) > tol::kGateNormDrift)
    throw std::logic_error("gate application drifted the state norm");
  return out;
}

namespace {

// Unnormalized projection of `state` onto `outcome` of `basis` at `qubit`,
// returned together with the branch probability.
std::pair<double, std::vector<Complex>> project_unnormalized(
    const StateVector& state, const QubitLabel& qubit, Basis basis,
    int outcome) {
  check_basis_valid(qubit, basis);
  check_outcome_bit(outcome);
  const std::size_t mask = std::size_t{1} << state.bit_shift(qubit);
  const auto& amps = state.amplitudes();
  std::vector<Complex> post(amps.size(), 0.0);
  double probability = 0.0;
  if (basis_component_count(basis) == 1) {
    // Z and PathAB are both computational-basis projections; PathAB only
    // relabels outcome 0 as |a⟩ and 1 as |b⟩.
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const int bit = (i & mask) ? 1 : 0;
      if (bit != outcome) continue;
      post[i] = amps[i];
      probability += std::norm(amps[i]);
    }
  } else {
    // X basis: overlap with (|0⟩ ± |1⟩)/√2, post state left in that ray.
    const double sign = outcome == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & mask) continue;
      const Complex overlap = (amps[i] + sign * amps[i | mask]) * kInvSqrt2;
      probability += std::norm(overlap);
      const Complex component = overlap * kInvSqrt2;
      post[i] = component;
      post[i | mask] = sign * component;
    }
  }
  return {probability, std::move(post)};
}

}  // namespace

double outcome_probability(const StateVector& state, const QubitLabel& qubit,
                           Basis basis, int outcome) {
  return project_unnormalized(state, qubit, basis, outcome).first;
}

Projection project(const StateVector& state, const QubitLabel& qubit,
                   Basis basis, int outcome) {
  auto [probability, post] = project_unnormalized(state, qubit, basis, outcome);
  if (probability < tol::kZeroProbability)
    throw ZeroProbabilityBranch("outcome " + std::to_string(outcome) + " on " +
                                to_string(qubit) + " has probability " +
                                std::to_string(probability));
  const double scale = 1.0 / std::sqrt(probability);
  for (Complex& a : post) a *= scale;
  return Projection{probability, StateVector(state.labels(), std::move(post))};
}

double fidelity_pure(const StateVector& a, const StateVector& b) {
  if (a.labels() != b.labels())
    throw std::invalid_argument("fidelity requires identical registers");
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    overlap += std::conj(a.amplitude(i)) * b.amplitude(i);
  return std::min(1.0, std::norm(overlap));
}

DensityMatrix reduced_density(const StateVector& state,
                              const std::vector<QubitLabel>& keep) {
  if (keep.empty())
    throw std::invalid_argument("keep set must be non-empty");
  std::vector<std::size_t> shifts;
  shifts.reserve(keep.size());
  for (const QubitLabel& label : keep) shifts.push_back(state.bit_shift(label));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      if (keep[i] == keep[j])
        throw std::invalid_argument("duplicate label in keep set");

  const std::size_t kept_bits = keep.size();
  const std::size_t dim = std::size_t{1} << kept_bits;
  std::size_t env_mask = state.size() - 1;
  for (std::size_t s : shifts) env_mask &= ~(std::size_t{1} << s);

  auto kept_index = [&](std::size_t i) {
    std::size_t r = 0;
    for (std::size_t k = 0; k < kept_bits; ++k)
      r |= ((i >> shifts[k]) & 1u) << (kept_bits - 1 - k);
    return r;
  };

  const auto& amps = state.amplitudes();
  std::vector<Complex> rho(dim * dim, 0.0);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::norm(amps[i]) == 0.0) continue;
    for (std::size_t j = 0; j < amps.size(); ++j) {
      if ((i & env_mask) != (j & env_mask)) continue;
      rho[kept_index(i) * dim + kept_index(j)] +=
          amps[i] * std::conj(amps[j]);
    }
  }
  return DensityMatrix(dim, std::move(rho));
}

StateVector phase_canonical(const StateVector& state) {
  for (const Complex& a : state.amplitudes()) {
    const double mag = std::abs(a);
    if (mag > tol::kPhasePivot) {
      const Complex phase = std::conj(a) / mag;
      std::vector<Complex> amps = state.amplitudes();
      for (Complex& x : amps) x *= phase;
      return StateVector(state.labels(), std::move(amps));
    }
  }
  throw std::invalid_argument("cannot canonicalize an all-zero state");
}

std::array<Complex, 2> phase_canonical(const std::array<Complex, 2>& amps) {
  for (const Complex& a : amps) {
    const double mag = std::abs(a);
    if (mag > tol::kPhasePivot) {
      const Complex phase = std::conj(a) / mag;
      return {amps[0] * phase, amps[1] * phase};
    }
  }
  throw std::invalid_argument("cannot canonicalize an all-zero state");
}

bool phase_equal(const StateVector& a, const StateVector& b,
                 double tolerance) {
  if (a.labels() != b.labels()) return false;
  const StateVector ca = phase_canonical(a);
  const StateVector cb = phase_canonical(b);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (std::abs(ca.amplitude(i) - cb.amplitude(i)) > tolerance) return false;
  return true;
}

}  // namespace pathspin
