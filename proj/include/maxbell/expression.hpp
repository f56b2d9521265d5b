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

#include <vector>

#include "maxbell/kernel.hpp"
#include "maxbell/scenario.hpp"

namespace maxbell {

/// The Bell expression in probability form,
///   I = sum_{k=0}^{d-1} w_k sum_{i=1}^{m} [P(A_i = B_i + k) + P(B_i = A_{i+1} + k)]
/// with A_{m+1} = A_1 + 1, where the folded weights are w_k = alpha_k for
/// k < floor(d/2) and w_{d-1-k} = -beta_k (the middle weight is zero for odd d).
class ProbabilityForm {
public:
    ProbabilityForm(const Scenario& s, CoefficientSet coefficients);

    const Scenario& scenario() const noexcept { return scenario_; }
    const CoefficientSet& coefficients() const noexcept { return coefficients_; }
    const std::vector<double>& folded_weights() const noexcept { return weights_; }

    /// I(p). Linear in p; requires matching (m, d).
    double evaluate(const Behaviour& b) const;

    /// The full coefficient tensor I_{abxy} in Behaviour layout, so that
    /// I(p) = sum I_{xyab} p(x, y, a, b).
    std::vector<double> full_tensor() const;

private:
    Scenario scenario_;
    CoefficientSet coefficients_;
    std::vector<double> weights_;
};

ProbabilityForm probability_form(const Scenario& s, const CoefficientSet& c);

/// The same expression in generalized-correlator form,
///   I~ = sum_{i=1}^m sum_{l=1}^{d-1} <A_i^l Bbar_i^l>,
/// with Bbar_i^l = a_l B_i^{d-l} + a_l^* B_{i-1}^{d-l} and the wrap term
/// Bbar_1^l = a_l B_1^{d-l} + a_l^* w^l B_m^{d-l}.
class CorrelatorForm {
public:
    /// Weights a_l of the tailored inequality (closed form).
    static CorrelatorForm tailored(const Scenario& s);

    /// Weights of an arbitrary coefficient set (defining Fourier sum).
    static CorrelatorForm from_coefficients(const Scenario& s, const CoefficientSet& c);

    const Scenario& scenario() const noexcept { return scenario_; }

    /// a_l, 1 <= l <= d-1.
    Complex weight(int l) const;

    /// I~(p). The value is real for any real normalized p; throws if the
    /// accumulated imaginary residue exceeds imag_tol.
    double evaluate(const Behaviour& b, double imag_tol = 1e-10) const;

    /// Bbar_i^l built from Bob's observable powers, 1 <= i <= m, 1 <= l <= d-1.
    Matrix barred(const ObservableSet& bob, int i, int l) const;

private:
    CorrelatorForm(const Scenario& s, std::vector<Complex> weights);

    Scenario scenario_;
    std::vector<Complex> weights_;
};

/// Max entrywise deviation of Bbar_i^l from conj(A_i^l) over all i, l, for the
/// CGLMP measurements and the given weights (tailored by default). Zero (to
/// rounding) exactly when the tailoring conditions hold.
double check_conjugation_conditions(const Scenario& s);
double check_conjugation_conditions(const Scenario& s, const CoefficientSet& c);

/// Convenience: tailored I~(p).
double correlator_form_value(const Scenario& s, const Behaviour& b, double imag_tol = 1e-10);

}  // namespace maxbell
