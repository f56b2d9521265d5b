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

#include "maxbell/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace maxbell {

namespace {
constexpr double kPi = std::numbers::pi;

double cot(double z) { return std::cos(z) / std::sin(z); }
}  // namespace

Scenario::Scenario(int settings, int outcomes) : settings_(settings), outcomes_(outcomes) {
    if (settings < 2)
        throw std::invalid_argument("Scenario: need at least 2 measurement settings, got " +
                                    std::to_string(settings));
    if (outcomes < 2)
        throw std::invalid_argument("Scenario: need at least 2 outcomes, got " +
                                    std::to_string(outcomes));
}

CoefficientSet::CoefficientSet(std::vector<double> alpha, std::vector<double> beta,
                               CoefficientSource source)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), source_(source) {
    if (alpha_.size() != beta_.size())
        throw std::invalid_argument("CoefficientSet: alpha and beta lengths differ");
    if (alpha_.empty()) throw std::invalid_argument("CoefficientSet: empty coefficient lists");
}

CoefficientSet CoefficientSet::custom(std::vector<double> alpha, std::vector<double> beta) {
    return CoefficientSet(std::move(alpha), std::move(beta), CoefficientSource::custom);
}

std::complex<double> omega_power(int d, double exponent) {
    const double angle = 2.0 * kPi * exponent / static_cast<double>(d);
    return {std::cos(angle), std::sin(angle)};
}

double g_func(const Scenario& s, double x) {
    const double t = (x + 0.5 / s.settings()) / s.outcomes();
    if (std::abs(t - std::round(t)) < 1e-12)
        throw std::domain_error("g_func: cotangent pole at x = " + std::to_string(x));
    return cot(kPi * t);
}

CoefficientSet tailored_coefficients(const Scenario& s) {
    const int m = s.settings();
    const int d = s.outcomes();
    const double prefactor = std::tan(kPi / (2.0 * m)) / (2.0 * d);
    const double g_half = g_func(s, s.half());

    std::vector<double> alpha(s.half()), beta(s.half());
    for (int k = 0; k < s.half(); ++k) {
        alpha[k] = prefactor * (g_func(s, k) - g_half);
        beta[k] = prefactor * (g_func(s, k + 1.0 - 1.0 / m) + g_half);
    }
    return CoefficientSet(std::move(alpha), std::move(beta), CoefficientSource::tailored);
}

CoefficientSet cglmp_coefficients(int outcomes) {
    if (outcomes < 2) throw std::invalid_argument("cglmp_coefficients: need d >= 2");
    std::vector<double> alpha(outcomes / 2);
    for (int k = 0; k < outcomes / 2; ++k)
        alpha[k] = 1.0 - 2.0 * k / (outcomes - 1.0);
    std::vector<double> beta = alpha;
    return CoefficientSet(std::move(alpha), std::move(beta), CoefficientSource::cglmp);
}

std::vector<std::complex<double>> correlator_weights(const Scenario& s) {
    const int m = s.settings();
    const int d = s.outcomes();
    const double scale = 1.0 / (2.0 * std::cos(kPi / (2.0 * m)));
    std::vector<std::complex<double>> a(d - 1);
    for (int l = 1; l < d; ++l)
        a[l - 1] = scale * omega_power(d, (2.0 * l - d) / (4.0 * m));
    return a;
}

std::vector<std::complex<double>> correlator_weights(const Scenario& s, const CoefficientSet& c) {
    const int d = s.outcomes();
    if (c.size() != s.half())
        throw std::invalid_argument("correlator_weights: coefficient length != floor(d/2)");
    std::vector<std::complex<double>> a(d - 1);
    for (int l = 1; l < d; ++l) {
        std::complex<double> sum = 0.0;
        for (int k = 0; k < s.half(); ++k)
            sum += c.alpha()[k] * omega_power(d, -static_cast<double>(k) * l) -
                   c.beta()[k] * omega_power(d, static_cast<double>(k + 1) * l);
        a[l - 1] = sum;
    }
    return a;
}

double s_value(const Scenario& s) {
    const double t = std::tan(kPi / (2.0 * s.settings()));
    return 0.5 * (1.0 - t * g_func(s, s.half()));
}

double coefficient_sum(const CoefficientSet& c) {
    double sum = 0.0;
    for (int k = 0; k < c.size(); ++k) sum += c.alpha()[k] - c.beta()[k];
    return sum;
}

}  // namespace maxbell
