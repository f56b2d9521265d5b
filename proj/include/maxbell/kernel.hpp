// Copyright 2026 The maxbell authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "maxbell/scenario.hpp"

namespace maxbell {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Pure bipartite state of two d-level systems, row-major in the |i>|j>
/// product basis (amplitude of |ij> at index i*d + j). Unit norm within 1e-12.
/// When the state is sum_q gamma_q |qq>, the Schmidt vector gamma is kept.
class Ket {
public:
    static Ket from_amplitudes(Vector amplitudes);

    int local_dimension() const noexcept { return dim_; }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    const std::optional<Eigen::VectorXd>& schmidt() const noexcept { return schmidt_; }

    /// d x d matrix Psi with Psi(i, j) = amplitude of |ij>.
    Matrix as_matrix() const;

    /// Projector |psi><psi| (d^2 x d^2).
    Matrix density() const;

private:
    Ket(Vector amplitudes, std::optional<Eigen::VectorXd> schmidt, int dim);
    friend Ket schmidt_state(const Eigen::VectorXd&);

    Vector amplitudes_;
    std::optional<Eigen::VectorXd> schmidt_;
    int dim_;
};

/// Normalized sum_q gamma_q |qq>. Throws on the zero vector.
Ket schmidt_state(const Eigen::VectorXd& gamma);

/// (1/sqrt(d)) sum_i |ii>.
Ket max_entangled(int d);

enum class Side { alice, bob };

/// One party's list of d-outcome projective measurements. projectors[x-1][a]
/// is the rank-structure projector of setting x onto outcome a. Observable
/// powers A_x^k = sum_a w^{ak} P_a are precomputed for k = 0..d.
class ObservableSet {
public:
    ObservableSet(Side side, std::vector<std::vector<Matrix>> projectors);

    Side side() const noexcept { return side_; }
    int settings() const noexcept { return static_cast<int>(projectors_.size()); }
    int outcomes() const noexcept { return static_cast<int>(projectors_.front().size()); }
    int dimension() const noexcept { return static_cast<int>(projectors_.front().front().rows()); }

    const Matrix& projector(int x, int a) const;  // x in 1..m, a in 0..d-1

    /// A_x^k = sum_a w^{ak} P_a^{(x)}, 0 <= k <= d. k = 0 and k = d give the
    /// identity; (A_x^k)^dagger = A_x^{d-k}.
    const Matrix& power(int x, int k) const;

    /// Max deviation from a projective measurement: hermiticity,
    /// orthogonality P_a P_b = delta_ab P_a, completeness sum_a P_a = 1.
    double projective_defect() const;

private:
    Side side_;
    std::vector<std::vector<Matrix>> projectors_;
    std::vector<std::vector<Matrix>> powers_;  // [x-1][k], k = 0..d
};

/// The optimal CGLMP measurements: eigenprojectors of
/// A_x = U_x^dag F Omega F^dag U_x (Alice) and B_y = V_y F^dag Omega F V_y^dag
/// (Bob), with eigenvalue w^a matched to outcome a by construction.
ObservableSet cglmp_observables(const Scenario& s, Side side);

/// Haar-like random rank-1 projective measurements, one unitary basis per
/// setting, drawn from `rng`.
ObservableSet random_projective_observables(int settings, int outcomes, Side side,
                                            std::mt19937_64& rng);

/// Entrywise complex conjugate of every projector (the measurement Bob must
/// perform to be perfectly correlated with Alice's on |psi+_d>).
ObservableSet conjugate_observables(const ObservableSet& obs, Side side);

/// Discrete Fourier transform matrix F[i][j] = w^{ij} / sqrt(d).
Matrix fourier_matrix(int d);

/// Joint probability table p(x, y, a, b), x, y in 1..m, a, b in 0..d-1,
/// stored row-major with x outermost and b innermost. Nonnegative within
/// -1e-12 and normalized per setting pair within 1e-10; signalling
/// distributions are representable.
class Behaviour {
public:
    Behaviour(int settings, int outcomes, std::vector<double> p);

    int settings() const noexcept { return settings_; }
    int outcomes() const noexcept { return outcomes_; }

    double operator()(int x, int y, int a, int b) const {
        return p_[index(x, y, a, b)];
    }

    const std::vector<double>& data() const noexcept { return p_; }

    static std::size_t flat_index(int settings, int outcomes, int x, int y, int a, int b) {
        return ((static_cast<std::size_t>(x - 1) * settings + (y - 1)) * outcomes + a) * outcomes +
               b;
    }

    std::size_t index(int x, int y, int a, int b) const {
        return flat_index(settings_, outcomes_, x, y, a, b);
    }

    /// All probabilities 1/d^2.
    static Behaviour uniform(int settings, int outcomes);

    /// Local deterministic strategy with outputs a_of_x[x-1], b_of_y[y-1].
    static Behaviour deterministic(int settings, int outcomes, const std::vector<int>& a_of_x,
                                   const std::vector<int>& b_of_y);

private:
    int settings_;
    int outcomes_;
    std::vector<double> p_;
};

/// P(A_x = a, B_y = b) = <psi| P_a^(x) x P_b^(y) |psi>. Throws if any computed
/// probability has |imaginary part| > imag_tol (non-Hermitian input).
Behaviour behaviour_from_quantum(const Ket& state, const ObservableSet& alice,
                                 const ObservableSet& bob, double imag_tol = 1e-10);

/// Same for a density operator: P = Tr[rho (P_a x P_b)].
Behaviour behaviour_from_density(const Matrix& rho, const ObservableSet& alice,
                                 const ObservableSet& bob, double imag_tol = 1e-10);

/// Closed form for CGLMP measurements on sum_q gamma_q |qq> (gamma normalized):
///   P = | (1/d) sum_q gamma_q exp(2 pi i q (a - b - theta_x + zeta_y) / d) |^2.
double closed_form_probability(const Scenario& s, const Eigen::VectorXd& gamma, int x, int y,
                               int a, int b);

/// Generalized correlator <A_x^k B_y^l> = sum_ab w^{ak + bl} p(x, y, a, b).
Complex correlator(const Behaviour& b, int x, int y, int k, int l);

struct NoSignallingReport {
    double max_violation;
    bool ok;
};

/// Largest marginal mismatch over remote-setting changes, both directions.
NoSignallingReport check_no_signalling(const Behaviour& b, double tol);

/// rho' = (1 - eta) |psi><psi| + eta I / d^2, for eta in [0, 1].
Matrix white_noise_mix(const Ket& state, double eta);

}  // namespace maxbell
