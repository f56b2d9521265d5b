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

#include "maxbell/expression.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace maxbell {

namespace {

std::vector<double> fold_weights(const Scenario& s, const CoefficientSet& c) {
    if (c.size() != s.half())
        throw std::invalid_argument("probability form: coefficient length " +
                                    std::to_string(c.size()) + " != floor(d/2) = " +
                                    std::to_string(s.half()));
    const int d = s.outcomes();
    std::vector<double> w(d, 0.0);
    for (int k = 0; k < s.half(); ++k) {
        w[k] = c.alpha()[k];
        w[d - 1 - k] = -c.beta()[k];
    }
    return w;  // for odd d the middle entry stays 0
}

void require_shape(const Scenario& s, const Behaviour& b, const char* what) {
    if (b.settings() != s.settings() || b.outcomes() != s.outcomes())
        throw std::invalid_argument(std::string(what) + ": behaviour shape mismatch");
}

}  // namespace

ProbabilityForm::ProbabilityForm(const Scenario& s, CoefficientSet coefficients)
    : scenario_(s), coefficients_(std::move(coefficients)),
      weights_(fold_weights(s, coefficients_)) {}

ProbabilityForm probability_form(const Scenario& s, const CoefficientSet& c) {
    return ProbabilityForm(s, c);
}

double ProbabilityForm::evaluate(const Behaviour& b) const {
    require_shape(scenario_, b, "ProbabilityForm::evaluate");
    const int m = scenario_.settings();
    const int d = scenario_.outcomes();
    double total = 0.0;
    for (int k = 0; k < d; ++k) {
        if (weights_[k] == 0.0) continue;
        double block = 0.0;
        for (int i = 1; i <= m; ++i) {
            // P(A_i = B_i + k)
            for (int j = 0; j < d; ++j) block += b(i, i, (j + k) % d, j);
            // P(B_i = A_{i+1} + k); the i = m term wraps through A_{m+1} = A_1 + 1
            if (i < m)
                for (int j = 0; j < d; ++j) block += b(i + 1, i, j, (j + k) % d);
            else
                for (int j = 0; j < d; ++j) block += b(1, m, j, (j + k + 1) % d);
        }
        total += weights_[k] * block;
    }
    return total;
}

std::vector<double> ProbabilityForm::full_tensor() const {
    const int m = scenario_.settings();
    const int d = scenario_.outcomes();
    std::vector<double> tensor(static_cast<std::size_t>(m) * m * d * d, 0.0);
    for (int k = 0; k < d; ++k)
        for (int i = 1; i <= m; ++i)
            for (int j = 0; j < d; ++j) {
                tensor[Behaviour::flat_index(m, d, i, i, (j + k) % d, j)] += weights_[k];
                if (i < m)
                    tensor[Behaviour::flat_index(m, d, i + 1, i, j, (j + k) % d)] += weights_[k];
                else
                    tensor[Behaviour::flat_index(m, d, 1, m, j, (j + k + 1) % d)] += weights_[k];
            }
    return tensor;
}

CorrelatorForm::CorrelatorForm(const Scenario& s, std::vector<Complex> weights)
    : scenario_(s), weights_(std::move(weights)) {}

CorrelatorForm CorrelatorForm::tailored(const Scenario& s) {
    return CorrelatorForm(s, correlator_weights(s));
}

CorrelatorForm CorrelatorForm::from_coefficients(const Scenario& s, const CoefficientSet& c) {
    return CorrelatorForm(s, correlator_weights(s, c));
}

Complex CorrelatorForm::weight(int l) const {
    if (l < 1 || l >= scenario_.outcomes())
        throw std::out_of_range("CorrelatorForm::weight: l out of range");
    return weights_[l - 1];
}

double CorrelatorForm::evaluate(const Behaviour& b, double imag_tol) const {
    require_shape(scenario_, b, "CorrelatorForm::evaluate");
    const int m = scenario_.settings();
    const int d = scenario_.outcomes();
    Complex total = 0.0;
    for (int i = 1; i <= m; ++i)
        for (int l = 1; l < d; ++l) {
            const Complex a = weights_[l - 1];
            total += a * correlator(b, i, i, l, d - l);
            if (i > 1)
                total += std::conj(a) * correlator(b, i, i - 1, l, d - l);
            else
                total += std::conj(a) * omega_power(d, l) * correlator(b, 1, m, l, d - l);
        }
    if (std::abs(total.imag()) > imag_tol)
        throw std::runtime_error("CorrelatorForm::evaluate: imaginary residue " +
                                 std::to_string(total.imag()));
    return total.real();
}

Matrix CorrelatorForm::barred(const ObservableSet& bob, int i, int l) const {
    const int m = scenario_.settings();
    const int d = scenario_.outcomes();
    if (i < 1 || i > m || l < 1 || l >= d)
        throw std::out_of_range("CorrelatorForm::barred: index out of range");
    const Complex a = weights_[l - 1];
    if (i > 1) return a * bob.power(i, d - l) + std::conj(a) * bob.power(i - 1, d - l);
    return a * bob.power(1, d - l) + std::conj(a) * omega_power(d, l) * bob.power(m, d - l);
}

namespace {

double conjugation_defect(const Scenario& s, const CorrelatorForm& form) {
    const ObservableSet alice = cglmp_observables(s, Side::alice);
    const ObservableSet bob = cglmp_observables(s, Side::bob);
    double worst = 0.0;
    for (int i = 1; i <= s.settings(); ++i)
        for (int l = 1; l < s.outcomes(); ++l) {
            const Matrix diff = form.barred(bob, i, l) - alice.power(i, l).conjugate();
            worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        }
    return worst;
}

}  // namespace

double check_conjugation_conditions(const Scenario& s) {
    return conjugation_defect(s, CorrelatorForm::tailored(s));
}

double check_conjugation_conditions(const Scenario& s, const CoefficientSet& c) {
    return conjugation_defect(s, CorrelatorForm::from_coefficients(s, c));
}

double correlator_form_value(const Scenario& s, const Behaviour& b, double imag_tol) {
    return CorrelatorForm::tailored(s).evaluate(b, imag_tol);
}

}  // namespace maxbell
