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

#include "maxbell/sos.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "maxbell/bounds.hpp"

namespace maxbell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kProjectiveTol = 1e-8;

int wrap_setting(int j, int m) { return (j - 1) % m + 1; }

void require_sos_shape(const Scenario& s, const ObservableSet& alice, const ObservableSet& bob) {
    if (alice.dimension() != s.outcomes() || bob.dimension() != s.outcomes())
        throw std::invalid_argument("sos: measurement dimension != d");
    if (alice.settings() != s.settings() || bob.settings() != s.settings())
        throw std::invalid_argument("sos: measurement count != m");
}

}  // namespace

SosTCoefficients sos_t_coefficients(const Scenario& s) {
    const int m = s.settings();
    const int d = s.outcomes();
    SosTCoefficients out;
    if (m == 2) return out;  // the T part of the decomposition vanishes

    const double cos_half = std::cos(kPi / (2.0 * m));
    const double cos_full = std::cos(kPi / m);
    const int rows = m - 2;
    out.mu.assign(rows, std::vector<Complex>(d - 1));
    out.nu.assign(rows, std::vector<Complex>(d - 1));
    out.tau.assign(rows, std::vector<Complex>(d - 1));

    for (int i = 1; i <= m - 3; ++i) {
        const double sin_i = std::sin(kPi * i / m);
        const double sin_ip = std::sin(kPi * (i + 1) / m);
        const double mu_scale = std::sin(kPi / m) / (2.0 * cos_half * std::sqrt(sin_i * sin_ip));
        const double nu_scale = std::sqrt(sin_ip / sin_i) / (2.0 * cos_half);
        const double tau_scale = std::sqrt(sin_i / sin_ip) / (2.0 * cos_half);
        for (int k = 1; k < d; ++k) {
            const double phase = (d - 2.0 * k) / (2.0 * m);
            out.mu[i - 1][k - 1] = mu_scale * omega_power(d, (i + 1) * phase);
            out.nu[i - 1][k - 1] = -nu_scale * omega_power(d, phase);
            out.tau[i - 1][k - 1] = tau_scale;
        }
    }
    {
        const int i = m - 2;
        const double root = 2.0 * std::numbers::sqrt2 * cos_half * std::sqrt(cos_full);
        for (int k = 1; k < d; ++k) {
            const double phase = (d - 2.0 * k) / (2.0 * m);
            out.mu[i - 1][k - 1] = -omega_power(d, -phase) / root;
            out.nu[i - 1][k - 1] = -omega_power(d, k + phase) / root;
            out.tau[i - 1][k - 1] = std::sqrt(cos_full) / (std::numbers::sqrt2 * cos_half);
        }
    }
    return out;
}

Matrix bell_operator(const Scenario& s, const ObservableSet& alice, const ObservableSet& bob) {
    require_sos_shape(s, alice, bob);
    const int d = s.outcomes();
    const CorrelatorForm form = CorrelatorForm::tailored(s);
    Matrix op = Matrix::Zero(d * d, d * d);
    for (int i = 1; i <= s.settings(); ++i)
        for (int k = 1; k < d; ++k)
            op += Eigen::kroneckerProduct(alice.power(i, k), form.barred(bob, i, k)).eval();
    return op;
}

Matrix p_operator(const Scenario& s, const ObservableSet& alice, const ObservableSet& bob, int i,
                  int k) {
    require_sos_shape(s, alice, bob);
    const int d = s.outcomes();
    if (i < 1 || i > s.settings() || k < 1 || k >= d)
        throw std::out_of_range("p_operator: index out of range");
    const CorrelatorForm form = CorrelatorForm::tailored(s);
    const Matrix identity = Matrix::Identity(d, d);
    return Eigen::kroneckerProduct(identity, form.barred(bob, i, k)).eval() -
           Eigen::kroneckerProduct(alice.power(i, k).adjoint().eval(), identity).eval();
}

Matrix t_operator(const Scenario& s, const ObservableSet& bob, const SosTCoefficients& coeffs,
                  int i, int k) {
    const int m = s.settings();
    const int d = s.outcomes();
    if (coeffs.empty()) throw std::invalid_argument("t_operator: no T family for m = 2");
    if (i < 1 || i > m - 2 || k < 1 || k >= d)
        throw std::out_of_range("t_operator: index out of range");
    return coeffs.mu[i - 1][k - 1] * bob.power(2, d - k) +
           coeffs.nu[i - 1][k - 1] * bob.power(wrap_setting(i + 2, m), d - k) +
           coeffs.tau[i - 1][k - 1] * bob.power(wrap_setting(i + 3, m), d - k);
}

double spectral_norm(const Matrix& m) {
    const Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    const double top = solver.eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, top));
}

SosCertificate sos_residual(const Scenario& s, const ObservableSet& alice,
                            const ObservableSet& bob, MeasurementProvenance provenance) {
    require_sos_shape(s, alice, bob);
    if (alice.projective_defect() > kProjectiveTol || bob.projective_defect() > kProjectiveTol)
        throw std::invalid_argument("sos_residual: measurements are not projective");

    const int m = s.settings();
    const int d = s.outcomes();
    const int n = d * d;
    const double qb = quantum_bound(s);

    const Matrix bell = bell_operator(s, alice, bob);
    Matrix residual = qb * Matrix::Identity(n, n) - bell;

    for (int i = 1; i <= m; ++i)
        for (int k = 1; k < d; ++k) {
            const Matrix p = p_operator(s, alice, bob, i, k);
            residual -= 0.5 * (p.adjoint() * p);
        }

    const SosTCoefficients coeffs = sos_t_coefficients(s);
    if (!coeffs.empty()) {
        Matrix bob_side = Matrix::Zero(d, d);
        for (int i = 1; i <= m - 2; ++i)
            for (int k = 1; k < d; ++k) {
                const Matrix t = t_operator(s, bob, coeffs, i, k);
                bob_side += t.adjoint() * t;
            }
        residual -= 0.5 * Eigen::kroneckerProduct(Matrix::Identity(d, d), bob_side).eval();
    }

    const Matrix shifted_bell = qb * Matrix::Identity(n, n) - bell;
    Eigen::SelfAdjointEigenSolver<Matrix> shifted(
        ((shifted_bell + shifted_bell.adjoint()) * 0.5).eval(), Eigen::EigenvaluesOnly);

    SosCertificate cert{s, spectral_norm(residual), residual.norm(),
                        shifted.eigenvalues().minCoeff(), provenance};
    return cert;
}

}  // namespace maxbell
