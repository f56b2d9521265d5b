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

#include <utility>
#include <vector>

#include "maxbell/bounds.hpp"
#include "maxbell/kernel.hpp"
#include "maxbell/scenario.hpp"

namespace maxbell {

struct RatioTable {
    enum class Kind { quantum_over_classical, ns_over_quantum };

    Kind kind;
    std::vector<int> m_values;
    std::vector<int> d_values;
    std::vector<std::vector<double>> entries;  // [d index][m index], full precision

    double at(int d, int m) const;
};

/// Q~/C~ and NS~/Q~ over the rectangle 2..m_max x 2..d_max.
std::pair<RatioTable, RatioTable> ratio_tables(int m_max, int d_max);

struct AsymptoticLimits {
    double qc;   // lim_{d->inf} Q~/C~ = (2m-1) pi cot(pi/2m) / (4m(m-1))
    double nsq;  // lim_{d->inf} NS~/Q~ = (2/pi) m tan(pi/2m)
};

AsymptoticLimits asymptotic_limits(int m);

/// White-noise level at which the optimal quantum value meets the classical
/// bound: eta* = 1 - C~/Q~.
double critical_visibility(const Scenario& s);

/// Shannon conditional entropy H(A|B) of the outcome pair at settings (x, y),
/// in logarithms of the given base (base <= 0 means base d). Terms with
/// P(ab) = 0 contribute nothing.
double conditional_entropy(const Behaviour& b, int x, int y, double base = 0.0);

/// I(A:B) = H(A) - H(A|B) at settings (x, y).
double mutual_information(const Behaviour& b, int x, int y, double base = 0.0);

/// Entanglement entropy -Tr(rho_A log rho_A) of a pure bipartite state, from
/// the Schmidt vector when available, otherwise from the reduced state.
double entanglement_entropy(const Ket& state, double base = 0.0);

struct NoisePoint {
    double eta;
    double value;  // I~ on (1-eta)|psi+><psi+| + eta I/d^2
};

/// Bell violation against white noise; the exact curve is (1-eta) m(d-1).
std::vector<NoisePoint> violation_vs_noise(const Scenario& s, const std::vector<double>& etas);

/// Key-generation measurement convention: Bob's extra measurement reproducing
/// Alice's A_1. `conjugate` uses the entrywise complex conjugate of Alice's
/// projectors (perfectly correlated on |psi+_d>); `same_matrix` reuses them
/// verbatim.
enum class KeyConvention { conjugate, same_matrix };

/// One-setting-per-party behaviour of `state` with Alice measuring the CGLMP
/// A_1 and Bob the chosen variant of it.
Behaviour key_settings_behaviour(const Scenario& s, const Ket& state, KeyConvention convention);

struct KeyEntropyReport {
    double conditional_entropy_conjugate;    // H(A_1|B_3), Bob conjugated
    double conditional_entropy_same_matrix;  // H(A_1|B_3), Bob verbatim
};

/// H(A_1|B_3) in dits under both conventions, surfacing which one realizes
/// the perfect-correlation value.
KeyEntropyReport key_entropy_report(const Scenario& s, const Ket& state);

}  // namespace maxbell
