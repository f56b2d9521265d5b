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

#include <complex>
#include <vector>

namespace maxbell {

/// Bipartite Bell scenario: each party chooses one of `settings` measurements,
/// each measurement has `outcomes` results. Requires settings >= 2 and
/// outcomes >= 2.
class Scenario {
public:
    Scenario(int settings, int outcomes);

    int settings() const noexcept { return settings_; }
    int outcomes() const noexcept { return outcomes_; }

    /// floor(d/2), the number of free (alpha, beta) pairs.
    int half() const noexcept { return outcomes_ / 2; }

    bool operator==(const Scenario&) const = default;

private:
    int settings_;
    int outcomes_;
};

enum class CoefficientSource { tailored, cglmp, custom };

/// Immutable (alpha_k, beta_k) weight pair, k = 0..floor(d/2)-1, defining a
/// Bell expression in probability form.
class CoefficientSet {
public:
    static CoefficientSet custom(std::vector<double> alpha, std::vector<double> beta);

    const std::vector<double>& alpha() const noexcept { return alpha_; }
    const std::vector<double>& beta() const noexcept { return beta_; }
    CoefficientSource source() const noexcept { return source_; }

    /// Number of (alpha, beta) pairs; equals floor(d/2) of the scenario the
    /// set was built for.
    int size() const noexcept { return static_cast<int>(alpha_.size()); }

private:
    CoefficientSet(std::vector<double> alpha, std::vector<double> beta, CoefficientSource source);

    friend CoefficientSet tailored_coefficients(const Scenario&);
    friend CoefficientSet cglmp_coefficients(int);

    std::vector<double> alpha_;
    std::vector<double> beta_;
    CoefficientSource source_;
};

/// exp(2*pi*i * exponent / d). Fractional exponents are allowed; they appear
/// throughout the measurement phases and correlator weights.
std::complex<double> omega_power(int d, double exponent);

/// g(x) = cot(pi (x + 1/2m) / d). Throws std::domain_error at the cotangent
/// poles, i.e. when x + 1/(2m) is an integer multiple of d.
double g_func(const Scenario& s, double x);

/// The coefficients making the Bell expression maximally violated by the
/// maximally entangled state:
///   alpha_k = (1/2d) tan(pi/2m) [g(k) - g(floor(d/2))]
///   beta_k  = (1/2d) tan(pi/2m) [g(k + 1 - 1/m) + g(floor(d/2))]
CoefficientSet tailored_coefficients(const Scenario& s);

/// CGLMP weights alpha_k = beta_k = 1 - 2k/(d-1); intended for m = 2.
CoefficientSet cglmp_coefficients(int outcomes);

/// Correlator-form weights a_l, l = 1..d-1 (entry [l-1]), closed form
/// a_l = omega^{(2l-d)/4m} / (2 cos(pi/2m)); satisfies a_l = conj(a_{d-l}).
std::vector<std::complex<double>> correlator_weights(const Scenario& s);

/// Correlator-form weights of an arbitrary coefficient set, by the defining
/// Fourier sum a_l = sum_k [alpha_k w^{-kl} - beta_k w^{(k+1)l}].
std::vector<std::complex<double>> correlator_weights(const Scenario& s, const CoefficientSet& c);

/// S = (1/2){1 - tan(pi/2m) cot[(pi/d)(floor(d/2) + 1/2m)]}; equals
/// sum_k (alpha_k - beta_k) for the tailored set.
double s_value(const Scenario& s);

/// sum_k (alpha_k - beta_k) of an arbitrary set. This is the "S" entering the
/// probability/correlator form relation for that set.
double coefficient_sum(const CoefficientSet& c);

}  // namespace maxbell
