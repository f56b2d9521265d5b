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

#include "maxbell/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maxbell/expression.hpp"

namespace maxbell {

namespace {
constexpr double kPi = std::numbers::pi;

double resolve_base(double base, int d) { return base > 0.0 ? base : static_cast<double>(d); }
}  // namespace

double RatioTable::at(int d, int m) const {
    for (std::size_t i = 0; i < d_values.size(); ++i)
        for (std::size_t j = 0; j < m_values.size(); ++j)
            if (d_values[i] == d && m_values[j] == m) return entries[i][j];
    throw std::out_of_range("RatioTable::at: (d, m) not tabulated");
}

std::pair<RatioTable, RatioTable> ratio_tables(int m_max, int d_max) {
    if (m_max < 2 || d_max < 2) throw std::invalid_argument("ratio_tables: need m, d >= 2");
    RatioTable qc{RatioTable::Kind::quantum_over_classical, {}, {}, {}};
    RatioTable nsq{RatioTable::Kind::ns_over_quantum, {}, {}, {}};
    for (int m = 2; m <= m_max; ++m) {
        qc.m_values.push_back(m);
        nsq.m_values.push_back(m);
    }
    for (int d = 2; d <= d_max; ++d) {
        qc.d_values.push_back(d);
        nsq.d_values.push_back(d);
        std::vector<double> qc_row, nsq_row;
        for (int m = 2; m <= m_max; ++m) {
            const Scenario s(m, d);
            const double c = classical_bound(s);
            const double q = quantum_bound(s);
            qc_row.push_back(q / c);
            nsq_row.push_back(ns_bound(s) / q);
        }
        qc.entries.push_back(std::move(qc_row));
        nsq.entries.push_back(std::move(nsq_row));
    }
    return {std::move(qc), std::move(nsq)};
}

AsymptoticLimits asymptotic_limits(int m) {
    if (m < 2) throw std::invalid_argument("asymptotic_limits: need m >= 2");
    const double x = kPi / (2.0 * m);
    return {(2.0 * m - 1.0) * kPi * (std::cos(x) / std::sin(x)) / (4.0 * m * (m - 1.0)),
            (2.0 / kPi) * m * std::tan(x)};
}

double critical_visibility(const Scenario& s) {
    return 1.0 - classical_bound(s) / quantum_bound(s);
}

double conditional_entropy(const Behaviour& b, int x, int y, double base) {
    const int d = b.outcomes();
    const double log_base = std::log(resolve_base(base, d));
    double h = 0.0;
    for (int out_b = 0; out_b < d; ++out_b) {
        double marginal = 0.0;
        for (int a = 0; a < d; ++a) marginal += b(x, y, a, out_b);
        if (marginal <= 0.0) continue;
        for (int a = 0; a < d; ++a) {
            const double joint = b(x, y, a, out_b);
            if (joint <= 0.0) continue;
            h -= joint * std::log(joint / marginal) / log_base;
        }
    }
    return h;
}

double mutual_information(const Behaviour& b, int x, int y, double base) {
    const int d = b.outcomes();
    const double log_base = std::log(resolve_base(base, d));
    double h_a = 0.0;
    for (int a = 0; a < d; ++a) {
        double marginal = 0.0;
        for (int out_b = 0; out_b < d; ++out_b) marginal += b(x, y, a, out_b);
        if (marginal > 0.0) h_a -= marginal * std::log(marginal) / log_base;
    }
    return h_a - conditional_entropy(b, x, y, base);
}

double entanglement_entropy(const Ket& state, double base) {
    const int d = state.local_dimension();
    const double log_base = std::log(resolve_base(base, d));
    Eigen::VectorXd spectrum;
    if (state.schmidt()) {
        spectrum = state.schmidt()->array().square();
    } else {
        const Matrix psi = state.as_matrix();
        Eigen::SelfAdjointEigenSolver<Matrix> solver(psi * psi.adjoint(), Eigen::EigenvaluesOnly);
        spectrum = solver.eigenvalues();
    }
    double e = 0.0;
    for (int q = 0; q < d; ++q) {
        const double lambda = spectrum[q];
        if (lambda > 1e-15) e -= lambda * std::log(lambda) / log_base;
    }
    return e;
}

std::vector<NoisePoint> violation_vs_noise(const Scenario& s, const std::vector<double>& etas) {
    const Ket psi = max_entangled(s.outcomes());
    const ObservableSet alice = cglmp_observables(s, Side::alice);
    const ObservableSet bob = cglmp_observables(s, Side::bob);
    std::vector<NoisePoint> curve;
    curve.reserve(etas.size());
    for (double eta : etas) {
        const Behaviour b = behaviour_from_density(white_noise_mix(psi, eta), alice, bob);
        curve.push_back({eta, correlator_form_value(s, b)});
    }
    return curve;
}

Behaviour key_settings_behaviour(const Scenario& s, const Ket& state, KeyConvention convention) {
    const ObservableSet cglmp_alice = cglmp_observables(s, Side::alice);
    std::vector<std::vector<Matrix>> alice_first{{}};
    std::vector<std::vector<Matrix>> bob_copy{{}};
    for (int a = 0; a < s.outcomes(); ++a) {
        const Matrix& p = cglmp_alice.projector(1, a);
        alice_first[0].push_back(p);
        bob_copy[0].push_back(convention == KeyConvention::conjugate ? p.conjugate().eval() : p);
    }
    return behaviour_from_quantum(state, ObservableSet(Side::alice, std::move(alice_first)),
                                  ObservableSet(Side::bob, std::move(bob_copy)));
}

KeyEntropyReport key_entropy_report(const Scenario& s, const Ket& state) {
    const Behaviour conj = key_settings_behaviour(s, state, KeyConvention::conjugate);
    const Behaviour same = key_settings_behaviour(s, state, KeyConvention::same_matrix);
    return {conditional_entropy(conj, 1, 1), conditional_entropy(same, 1, 1)};
}

}  // namespace maxbell
