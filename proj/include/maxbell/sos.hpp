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

#include "maxbell/expression.hpp"
#include "maxbell/kernel.hpp"
#include "maxbell/scenario.hpp"

namespace maxbell {

/// Coefficients of the Bob-side operators
///   T_ik = mu_ik B_2^{d-k} + nu_ik B_{i+2}^{d-k} + tau_ik B_{i+3}^{d-k}
/// for i = 1..m-2, k = 1..d-1 (entry [i-1][k-1]); the Bob indices i+2, i+3
/// wrap modulo m into 1..m. Empty for m = 2, where the whole T family
/// vanishes.
struct SosTCoefficients {
    std::vector<std::vector<Complex>> mu;
    std::vector<std::vector<Complex>> nu;
    std::vector<std::vector<Complex>> tau;

    bool empty() const noexcept { return mu.empty(); }
};

SosTCoefficients sos_t_coefficients(const Scenario& s);

/// Bell operator of the tailored inequality,
///   B = sum_{i=1..m} sum_{k=1..d-1} A_i^k x Bbar_i^k   (d^2 x d^2, Hermitian).
Matrix bell_operator(const Scenario& s, const ObservableSet& alice, const ObservableSet& bob);

/// P_ik = 1 x Bbar_i^k - (A_i^k)^dag x 1, 1 <= i <= m, 1 <= k <= d-1.
Matrix p_operator(const Scenario& s, const ObservableSet& alice, const ObservableSet& bob, int i,
                  int k);

/// T_ik as a Bob-space (d x d) matrix; the full-space operator is 1 x T_ik.
Matrix t_operator(const Scenario& s, const ObservableSet& bob, const SosTCoefficients& coeffs,
                  int i, int k);

enum class MeasurementProvenance { cglmp, random };

struct SosCertificate {
    Scenario scenario;
    double residual_spectral_norm;    // || Qb 1 - B - 1/2 sum P'P - 1/2 sum T'T ||_2
    double residual_frobenius_norm;
    double min_eigenvalue_shifted;    // smallest eigenvalue of Qb 1 - B
    MeasurementProvenance provenance;

    bool valid(double tol) const noexcept { return residual_spectral_norm <= tol; }
};

/// Certifies the shifted-Bell-operator identity numerically for the given
/// measurements, which only need to be d-outcome projective; throws when they
/// are not (projective defect above 1e-8).
SosCertificate sos_residual(const Scenario& s, const ObservableSet& alice,
                            const ObservableSet& bob,
                            MeasurementProvenance provenance = MeasurementProvenance::cglmp);

/// Spectral norm through the Hermitian eigenproblem of M^dag M.
double spectral_norm(const Matrix& m);

}  // namespace maxbell
