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

#include "maxbell/kernel.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace maxbell {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kBehaviourNormTol = 1e-10;
constexpr double kBehaviourNegTol = 1e-12;

int isqrt_exact(int n, const char* what) {
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (r * r != n) throw std::invalid_argument(std::string(what) + ": length is not a square");
    return r;
}

}  // namespace

Ket::Ket(Vector amplitudes, std::optional<Eigen::VectorXd> schmidt, int dim)
    : amplitudes_(std::move(amplitudes)), schmidt_(std::move(schmidt)), dim_(dim) {}

Ket Ket::from_amplitudes(Vector amplitudes) {
    const int dim = isqrt_exact(static_cast<int>(amplitudes.size()), "Ket");
    if (dim < 2) throw std::invalid_argument("Ket: local dimension must be >= 2");
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kNormTol)
        throw std::invalid_argument("Ket: amplitudes are not normalized (|norm - 1| = " +
                                    std::to_string(std::abs(norm - 1.0)) + ")");
    return Ket(std::move(amplitudes), std::nullopt, dim);
}

Matrix Ket::as_matrix() const {
    Matrix psi(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) psi(i, j) = amplitudes_[i * dim_ + j];
    return psi;
}

Matrix Ket::density() const { return amplitudes_ * amplitudes_.adjoint(); }

Ket schmidt_state(const Eigen::VectorXd& gamma) {
    const int d = static_cast<int>(gamma.size());
    if (d < 2) throw std::invalid_argument("schmidt_state: need at least 2 Schmidt terms");
    const double norm = gamma.norm();
    if (norm == 0.0) throw std::invalid_argument("schmidt_state: zero Schmidt vector");
    Eigen::VectorXd normalized = gamma / norm;
    Vector amplitudes = Vector::Zero(d * d);
    for (int q = 0; q < d; ++q) amplitudes[q * d + q] = normalized[q];
    return Ket(std::move(amplitudes), std::move(normalized), d);
}

Ket max_entangled(int d) { return schmidt_state(Eigen::VectorXd::Ones(d)); }

ObservableSet::ObservableSet(Side side, std::vector<std::vector<Matrix>> projectors)
    : side_(side), projectors_(std::move(projectors)) {
    if (projectors_.empty()) throw std::invalid_argument("ObservableSet: no settings");
    const int d = static_cast<int>(projectors_.front().size());
    for (const auto& family : projectors_) {
        if (static_cast<int>(family.size()) != d)
            throw std::invalid_argument("ObservableSet: outcome counts differ across settings");
        for (const auto& p : family)
            if (p.rows() != d || p.cols() != d)
                throw std::invalid_argument("ObservableSet: projector is not d x d");
    }
    powers_.resize(projectors_.size());
    for (std::size_t x = 0; x < projectors_.size(); ++x) {
        powers_[x].resize(d + 1);
        powers_[x][0] = Matrix::Identity(d, d);
        for (int k = 1; k <= d; ++k) {
            Matrix acc = Matrix::Zero(d, d);
            for (int a = 0; a < d; ++a)
                acc += omega_power(d, static_cast<double>(a) * k) * projectors_[x][a];
            powers_[x][k] = std::move(acc);
        }
    }
}

const Matrix& ObservableSet::projector(int x, int a) const {
    if (x < 1 || x > settings() || a < 0 || a >= outcomes())
        throw std::out_of_range("ObservableSet::projector: index out of range");
    return projectors_[x - 1][a];
}

const Matrix& ObservableSet::power(int x, int k) const {
    if (x < 1 || x > settings() || k < 0 || k > outcomes())
        throw std::out_of_range("ObservableSet::power: index out of range");
    return powers_[x - 1][k];
}

double ObservableSet::projective_defect() const {
    const int d = outcomes();
    double defect = 0.0;
    for (int x = 1; x <= settings(); ++x) {
        Matrix sum = Matrix::Zero(d, d);
        for (int a = 0; a < d; ++a) {
            const Matrix& pa = projector(x, a);
            sum += pa;
            defect = std::max(defect, (pa - pa.adjoint()).cwiseAbs().maxCoeff());
            for (int b = 0; b < d; ++b) {
                Matrix product = pa * projector(x, b);
                if (a == b) product -= pa;
                defect = std::max(defect, product.cwiseAbs().maxCoeff());
            }
        }
        defect = std::max(defect, (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
    }
    return defect;
}

ObservableSet cglmp_observables(const Scenario& s, Side side) {
    const int m = s.settings();
    const int d = s.outcomes();
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

    std::vector<std::vector<Matrix>> projectors(m);
    for (int x = 1; x <= m; ++x) {
        projectors[x - 1].reserve(d);
        // Eigenvector of eigenvalue w^a: U_x^dag F |a> for Alice, V_y F^dag |b>
        // for Bob, so eigenvalue w^a is matched to outcome a by construction.
        const double phase = (side == Side::alice) ? (x - 0.5) / m : static_cast<double>(x) / m;
        for (int a = 0; a < d; ++a) {
            Vector v(d);
            for (int j = 0; j < d; ++j) {
                const double exponent = (side == Side::alice)
                                            ? j * (static_cast<double>(a) - phase)
                                            : j * (phase - static_cast<double>(a));
                v[j] = omega_power(d, exponent) * inv_sqrt_d;
            }
            projectors[x - 1].push_back(v * v.adjoint());
        }
    }
    return ObservableSet(side, std::move(projectors));
}

ObservableSet random_projective_observables(int settings, int outcomes, Side side,
                                            std::mt19937_64& rng) {
    if (settings < 1 || outcomes < 2)
        throw std::invalid_argument("random_projective_observables: bad shape");
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<Matrix>> projectors(settings);
    for (int x = 0; x < settings; ++x) {
        Matrix g(outcomes, outcomes);
        for (int i = 0; i < outcomes; ++i)
            for (int j = 0; j < outcomes; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ();
        const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < outcomes; ++j) {
            const Complex rjj = r(j, j);
            if (std::abs(rjj) > 0) q.col(j) *= rjj / std::abs(rjj);
        }
        projectors[x].reserve(outcomes);
        for (int a = 0; a < outcomes; ++a)
            projectors[x].push_back(q.col(a) * q.col(a).adjoint());
    }
    return ObservableSet(side, std::move(projectors));
}

ObservableSet conjugate_observables(const ObservableSet& obs, Side side) {
    std::vector<std::vector<Matrix>> projectors(obs.settings());
    for (int x = 1; x <= obs.settings(); ++x)
        for (int a = 0; a < obs.outcomes(); ++a)
            projectors[x - 1].push_back(obs.projector(x, a).conjugate());
    return ObservableSet(side, std::move(projectors));
}

Matrix fourier_matrix(int d) {
    if (d < 2) throw std::invalid_argument("fourier_matrix: need d >= 2");
    Matrix f(d, d);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            f(i, j) = omega_power(d, static_cast<double>(i) * j) * inv_sqrt_d;
    return f;
}

Behaviour::Behaviour(int settings, int outcomes, std::vector<double> p)
    : settings_(settings), outcomes_(outcomes), p_(std::move(p)) {
    if (settings < 1 || outcomes < 2) throw std::invalid_argument("Behaviour: bad shape");
    const std::size_t expected = static_cast<std::size_t>(settings) * settings * outcomes * outcomes;
    if (p_.size() != expected)
        throw std::invalid_argument("Behaviour: expected " + std::to_string(expected) +
                                    " probabilities, got " + std::to_string(p_.size()));
    for (int x = 1; x <= settings; ++x)
        for (int y = 1; y <= settings; ++y) {
            double total = 0.0;
            for (int a = 0; a < outcomes; ++a)
                for (int b = 0; b < outcomes; ++b) {
                    const double v = p_[index(x, y, a, b)];
                    if (v < -kBehaviourNegTol)
                        throw std::invalid_argument("Behaviour: negative probability " +
                                                    std::to_string(v));
                    total += v;
                }
            if (std::abs(total - 1.0) > kBehaviourNormTol)
                throw std::invalid_argument("Behaviour: setting pair (" + std::to_string(x) + "," +
                                            std::to_string(y) + ") sums to " +
                                            std::to_string(total));
        }
}

Behaviour Behaviour::uniform(int settings, int outcomes) {
    const std::size_t n = static_cast<std::size_t>(settings) * settings * outcomes * outcomes;
    return Behaviour(settings, outcomes,
                     std::vector<double>(n, 1.0 / (static_cast<double>(outcomes) * outcomes)));
}

Behaviour Behaviour::deterministic(int settings, int outcomes, const std::vector<int>& a_of_x,
                                   const std::vector<int>& b_of_y) {
    if (static_cast<int>(a_of_x.size()) != settings || static_cast<int>(b_of_y.size()) != settings)
        throw std::invalid_argument("Behaviour::deterministic: assignment length != settings");
    std::vector<double> p(static_cast<std::size_t>(settings) * settings * outcomes * outcomes, 0.0);
    for (int x = 1; x <= settings; ++x)
        for (int y = 1; y <= settings; ++y)
            p[flat_index(settings, outcomes, x, y, a_of_x[x - 1], b_of_y[y - 1])] = 1.0;
    return Behaviour(settings, outcomes, std::move(p));
}

namespace {

Behaviour behaviour_from_entry_function(int m, int d,
                                        const std::function<Complex(int, int, int, int)>& entry,
                                        double imag_tol) {
    std::vector<double> p(static_cast<std::size_t>(m) * m * d * d);
    std::size_t idx = 0;
    for (int x = 1; x <= m; ++x)
        for (int y = 1; y <= m; ++y)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    const Complex value = entry(x, y, a, b);
                    if (std::abs(value.imag()) > imag_tol)
                        throw std::runtime_error(
                            "behaviour: probability has imaginary part " +
                            std::to_string(value.imag()) + " (non-Hermitian input?)");
                    p[idx++] = value.real();
                }
    return Behaviour(m, d, std::move(p));
}

}  // namespace

Behaviour behaviour_from_quantum(const Ket& state, const ObservableSet& alice,
                                 const ObservableSet& bob, double imag_tol) {
    const int d = state.local_dimension();
    if (alice.dimension() != d || bob.dimension() != d)
        throw std::invalid_argument("behaviour_from_quantum: dimension mismatch");
    if (alice.settings() != bob.settings())
        throw std::invalid_argument("behaviour_from_quantum: setting counts differ");
    const Matrix psi = state.as_matrix();
    const Matrix psi_dag = psi.adjoint();
    return behaviour_from_entry_function(
        alice.settings(), d,
        [&](int x, int y, int a, int b) {
            // <psi|(P x Q)|psi> = Tr[Psi^dag P Psi Q^T]
            return (psi_dag * alice.projector(x, a) * psi * bob.projector(y, b).transpose())
                .trace();
        },
        imag_tol);
}

Behaviour behaviour_from_density(const Matrix& rho, const ObservableSet& alice,
                                 const ObservableSet& bob, double imag_tol) {
    const int d = alice.dimension();
    if (bob.dimension() != d) throw std::invalid_argument("behaviour_from_density: dim mismatch");
    if (rho.rows() != d * d || rho.cols() != d * d)
        throw std::invalid_argument("behaviour_from_density: rho is not d^2 x d^2");
    if (alice.settings() != bob.settings())
        throw std::invalid_argument("behaviour_from_density: setting counts differ");
    const int m = alice.settings();

    // Tr[rho (P x Q)] = sum_ik P(k,i) C(i,k) with C(i,k) = Tr[rho_block(i,k) Q],
    // where rho_block(i,k) is the d x d block at rows i*d.., cols k*d...
    std::vector<std::vector<Matrix>> contracted(m, std::vector<Matrix>(d));
    for (int y = 1; y <= m; ++y)
        for (int b = 0; b < d; ++b) {
            Matrix c(d, d);
            const Matrix& q = bob.projector(y, b);
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    c(i, k) = (rho.block(i * d, k * d, d, d) * q).trace();
            contracted[y - 1][b] = std::move(c);
        }
    return behaviour_from_entry_function(
        m, d,
        [&](int x, int y, int a, int b) {
            return (alice.projector(x, a) * contracted[y - 1][b]).trace();
        },
        imag_tol);
}

double closed_form_probability(const Scenario& s, const Eigen::VectorXd& gamma, int x, int y,
                               int a, int b) {
    const int m = s.settings();
    const int d = s.outcomes();
    if (gamma.size() != d) throw std::invalid_argument("closed_form_probability: gamma size != d");
    if (x < 1 || x > m || y < 1 || y > m || a < 0 || a >= d || b < 0 || b >= d)
        throw std::out_of_range("closed_form_probability: index out of range");
    const double theta_x = (x - 0.5) / m;
    const double zeta_y = static_cast<double>(y) / m;
    Complex sum = 0.0;
    for (int q = 0; q < d; ++q)
        sum += gamma[q] * omega_power(d, q * (a - b - theta_x + zeta_y));
    return std::norm(sum / static_cast<double>(d));
}

Complex correlator(const Behaviour& behaviour, int x, int y, int k, int l) {
    const int d = behaviour.outcomes();
    if (k < 0 || k > d || l < 0 || l > d)
        throw std::out_of_range("correlator: Fourier index out of range");
    Complex sum = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            sum += omega_power(d, static_cast<double>(a) * k + static_cast<double>(b) * l) *
                   behaviour(x, y, a, b);
    return sum;
}

NoSignallingReport check_no_signalling(const Behaviour& b, double tol) {
    const int m = b.settings();
    const int d = b.outcomes();
    double worst = 0.0;
    for (int x = 1; x <= m; ++x)
        for (int a = 0; a < d; ++a)
            for (int y = 1; y <= m; ++y)
                for (int y2 = y + 1; y2 <= m; ++y2) {
                    double lhs = 0.0, rhs = 0.0;
                    for (int out = 0; out < d; ++out) {
                        lhs += b(x, y, a, out);
                        rhs += b(x, y2, a, out);
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
    for (int y = 1; y <= m; ++y)
        for (int out = 0; out < d; ++out)
            for (int x = 1; x <= m; ++x)
                for (int x2 = x + 1; x2 <= m; ++x2) {
                    double lhs = 0.0, rhs = 0.0;
                    for (int a = 0; a < d; ++a) {
                        lhs += b(x, y, a, out);
                        rhs += b(x2, y, a, out);
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
    return {worst, worst <= tol};
}

Matrix white_noise_mix(const Ket& state, double eta) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("white_noise_mix: eta outside [0, 1]");
    const int d = state.local_dimension();
    const int n = d * d;
    return (1.0 - eta) * state.density() + (eta / n) * Matrix::Identity(n, n);
}

}  // namespace maxbell
