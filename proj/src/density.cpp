// Copyright 2026 The qcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcs/density.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcs {

namespace {

// H (x) H, hermitian and involutory; conjugating by it swaps the
// computational and {|+>, |->} descriptions.
const Eigen::Matrix4cd& hadamard2() {
  static const Eigen::Matrix4cd h2 = [] {
    Eigen::Matrix2d h;
    h << 1.0, 1.0, 1.0, -1.0;
    h *= 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd out;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out(r, c) = Complex(h(r / 2, c / 2) * h(r % 2, c % 2), 0.0);
    return out;
  }();
  return h2;
}

template <typename Matrix>
void validate_density_impl(const Matrix& m, const char* what) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!is_finite(m(r, c)))
        throw std::invalid_argument(std::string(what) + ": non-finite entry");
  double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > kAlgebraTol) {
    throw std::invalid_argument(std::string(what) + ": not hermitian (deviation " +
                                std::to_string(herm_err) + ")");
  }
  double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_err > kAlgebraTol) {
    throw std::invalid_argument(std::string(what) + ": trace differs from 1 by " +
                                std::to_string(trace_err));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kEigenvalueFloor) {
    throw std::invalid_argument(std::string(what) + ": negative eigenvalue " +
                                std::to_string(min_eig));
  }
}

void require_basis(BasisTag got, BasisTag want, const char* op) {
  if (got != want) {
    throw std::invalid_argument(std::string(op) + ": density is tagged with the wrong basis");
  }
}

void check_pair_indices(const SingleExcitationState& s, int i, int j, const char* op) {
  if (i < 0 || j < 0 || i >= s.n() || j >= s.n()) {
    throw std::invalid_argument(std::string(op) + ": qubit index out of range");
  }
  if (i == j) {
    throw std::invalid_argument(std::string(op) + ": need two distinct qubits");
  }
}

}  // namespace

void validate_density(const QubitDensity& d) { validate_density_impl(d.m, "QubitDensity"); }
void validate_density(const PairDensity& d) { validate_density_impl(d.m, "PairDensity"); }

PairDensity pair_density_computational(const SingleExcitationState& s, int i, int j) {
  check_pair_indices(s, i, j, "pair_density_computational");
  const Complex v = s.vacuum_amp;
  const Complex ai = s.exc_amps[static_cast<size_t>(i)];
  const Complex aj = s.exc_amps[static_cast<size_t>(j)];
  double rest = 0.0;
  for (int k = 0; k < s.n(); ++k) {
    if (k != i && k != j) rest += std::norm(s.exc_amps[static_cast<size_t>(k)]);
  }

  // Basis order |ab> with a = qubit i, b = qubit j. The environment is in
  // |0...0> for every term except |e_k>, which contributes only to the |00>
  // diagonal; |11> never occurs in this sector.
  PairDensity rho;
  rho.basis = BasisTag::Computational;
  Eigen::Matrix4cd& m = rho.m;
  m.setZero();
  m(0, 0) = std::norm(v) + rest;
  m(0, 1) = v * std::conj(aj);
  m(0, 2) = v * std::conj(ai);
  m(1, 0) = std::conj(m(0, 1));
  m(1, 1) = std::norm(aj);
  m(1, 2) = aj * std::conj(ai);
  m(2, 0) = std::conj(m(0, 2));
  m(2, 1) = std::conj(m(1, 2));
  m(2, 2) = std::norm(ai);
  return rho;
}

PairDensity to_measurement_basis(const PairDensity& rho) {
  require_basis(rho.basis, BasisTag::Computational, "to_measurement_basis");
  validate_density(rho);
  PairDensity out;
  out.basis = BasisTag::Measurement;
  out.m = hadamard2() * rho.m * hadamard2();
  return out;
}

PairDensity to_computational_basis(const PairDensity& rho) {
  require_basis(rho.basis, BasisTag::Measurement, "to_computational_basis");
  validate_density(rho);
  PairDensity out;
  out.basis = BasisTag::Computational;
  out.m = hadamard2() * rho.m * hadamard2();
  return out;
}

ConditionalOutcome conditional_receiver_state(const PairDensity& rho, int publisher_outcome) {
  require_basis(rho.basis, BasisTag::Measurement, "conditional_receiver_state");
  if (publisher_outcome != 1 && publisher_outcome != -1) {
    throw std::invalid_argument("conditional_receiver_state: outcome must be +1 or -1");
  }
  validate_density(rho);
  Eigen::Matrix2cd block = (publisher_outcome == 1) ? rho.m.topLeftCorner<2, 2>().eval()
                                                    : rho.m.bottomRightCorner<2, 2>().eval();
  double prob = block.trace().real();
  prob = std::clamp(prob, 0.0, 1.0);
  if (prob <= 1e-15) {
    throw zero_probability_error(
        "conditional_receiver_state: publisher outcome has probability zero");
  }
  ConditionalOutcome out;
  out.probability = prob;
  out.state.basis = BasisTag::Measurement;
  out.state.m = block / prob;
  return out;
}

QubitDensity evolve_qubit(const QubitDensity& rho, double t, QubitFrequency freq) {
  require_basis(rho.basis, BasisTag::Measurement, "evolve_qubit");
  if (!std::isfinite(t)) throw std::invalid_argument("evolve_qubit: non-finite time");
  validate_density_impl(rho.m, "evolve_qubit input");

  static const Eigen::Matrix2cd h = [] {
    Eigen::Matrix2cd m;
    double r = 1.0 / std::sqrt(2.0);
    m << Complex(r, 0), Complex(r, 0), Complex(r, 0), Complex(-r, 0);
    return m;
  }();

  // diag(1, e^{+iwt}) conjugation is a phase rotation of the computational
  // off-diagonals; done there and rotated back.
  Eigen::Matrix2cd comp = h * rho.m * h;
  Complex phase = std::polar(1.0, freq.omega * t);
  comp(1, 0) *= phase;
  comp(0, 1) *= std::conj(phase);

  QubitDensity out;
  out.basis = BasisTag::Measurement;
  out.m = h * comp * h;
  return out;
}

std::pair<double, double> outcome_probabilities(int n, double delta, QubitFrequency freq,
                                                int publisher_outcome) {
  if (n < 2) throw std::invalid_argument("outcome_probabilities: need n >= 2");
  if (publisher_outcome != 1 && publisher_outcome != -1) {
    throw std::invalid_argument("outcome_probabilities: outcome must be +1 or -1");
  }
  if (!std::isfinite(delta)) {
    throw std::invalid_argument("outcome_probabilities: non-finite delta");
  }
  double bias = std::cos(freq.omega * delta) / double(n);
  double p_same = 0.5 + bias;
  double p_diff = 0.5 - bias;
  if (publisher_outcome == 1) return {p_same, p_diff};
  return {p_diff, p_same};
}

PairCorrelation pair_correlation(const SingleExcitationState& s, int i, int j, double delta,
                                 QubitFrequency freq) {
  check_pair_indices(s, i, j, "pair_correlation");
  if (!std::isfinite(delta)) throw std::invalid_argument("pair_correlation: non-finite delta");

  // Amplitudes at measurement time: qubit i at 0, qubit j lagging by delta.
  const Complex bi = s.exc_amps[static_cast<size_t>(i)];
  const Complex bj = s.exc_amps[static_cast<size_t>(j)] * std::polar(1.0, freq.omega * delta);
  const Complex v = s.vacuum_amp;

  double cross = (bi * std::conj(bj)).real();
  double vac_i = (std::conj(v) * bi).real();
  double vac_j = (std::conj(v) * bj).real();

  auto p = [&](int si, int sj) {
    double val = 0.25 * (1.0 + 2.0 * (si * vac_i + sj * vac_j) + 2.0 * si * sj * cross);
    return std::max(val, 0.0);
  };
  PairCorrelation c;
  c.pp = p(1, 1);
  c.pm = p(1, -1);
  c.mp = p(-1, 1);
  c.mm = p(-1, -1);
  return c;
}

double concurrence(const PairDensity& rho) {
  require_basis(rho.basis, BasisTag::Computational, "concurrence");
  validate_density(rho);

  static const Eigen::Matrix4cd yy = [] {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 3) = Complex(-1, 0);
    m(1, 2) = Complex(1, 0);
    m(2, 1) = Complex(1, 0);
    m(3, 0) = Complex(-1, 0);
    return m;
  }();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.m);
  Eigen::Vector4d clamped = es.eigenvalues().cwiseMax(0.0);
  Eigen::Matrix4cd sqrt_rho = es.eigenvectors() *
                              clamped.cwiseSqrt().asDiagonal().toDenseMatrix().cast<Complex>() *
                              es.eigenvectors().adjoint();

  Eigen::Matrix4cd flipped = yy * rho.m.conjugate() * yy;
  Eigen::Matrix4cd m = sqrt_rho * flipped * sqrt_rho;
  m = Complex(0.5, 0.0) * (m + m.adjoint().eval());  // kill rounding skew

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es2(m);
  Eigen::Vector4d lam = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt();  // ascending
  double c = lam(3) - lam(2) - lam(1) - lam(0);
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace qcs
