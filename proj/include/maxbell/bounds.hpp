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

#include <cstdint>
#include <vector>

#include "maxbell/expression.hpp"
#include "maxbell/kernel.hpp"
#include "maxbell/scenario.hpp"

namespace maxbell {

/// Deterministic strategy in chained-difference coordinates: the 2m-1 free
/// output differences q_1..q_{2m-1}, each in 0..d-1. The last difference is
/// fixed by the superselection rule q_{2m} = -1 - sum q_i (mod d).
struct DeterministicStrategy {
    std::vector<int> differences;

    int derived_last(int outcomes) const;

    /// Output assignments (a_x, b_y) realizing these differences with A_1 = 0.
    void realize(int settings, int outcomes, std::vector<int>& a_of_x,
                 std::vector<int>& b_of_y) const;
};

/// I(strategy) in probability-form units: the sum of the folded weights at the
/// 2m chain differences.
double strategy_value(const ProbabilityForm& form, const DeterministicStrategy& strategy);

/// Classical bound in correlator-form units (tailored inequality):
///   C~ = (1/2) tan(pi/2m) [(2m-1) g(0) - g(1 - 1/m)] - m.
double classical_bound(const Scenario& s);

/// Exact classical maximum by value iteration over the running difference
/// residue, in "hatted" units (weights g(k)); the optimum is
/// (2m-1) g(0) + g(d-1).
double classical_bound_dp(const Scenario& s);

/// Converts a hatted-unit classical value to correlator-form units.
double hatted_to_correlator_units(const Scenario& s, double hatted);

struct BruteForceResult {
    double probability_form_value;  // max of sum w_{q_i} over all strategies
    double correlator_form_value;   // d * max - 2m * sum(alpha - beta)
    DeterministicStrategy argmax;   // lexicographically smallest maximizer
    std::uint64_t strategies;       // d^(2m-1)
};

/// Exhaustive maximum over the reduced difference space d^(2m-1), partitioned
/// across hardware threads. Works for any coefficient set. Throws when the
/// enumeration would exceed `budget` strategies.
BruteForceResult classical_bound_bruteforce(const Scenario& s, const CoefficientSet& c,
                                            std::uint64_t budget = 100'000'000);

/// Tsirelson bound m(d-1).
double quantum_bound(const Scenario& s);

/// I~ evaluated on |psi+_d> with the CGLMP measurements; equals m(d-1) up to
/// numerical error.
double quantum_value_at_optimal(const Scenario& s);

/// No-signalling bound m tan(pi/2m) g(0) - m.
double ns_bound(const Scenario& s);

/// The no-signalling behaviour attaining the algebraic bound: maximally
/// correlated blocks on the setting pairs appearing in the expression,
/// uniform elsewhere.
Behaviour ns_extremal_behaviour(const Scenario& s);

struct BoundsReport {
    Scenario scenario;
    double classical;
    double quantum;
    double no_signalling;
    double algebraic_probability_form;  // 2m alpha_0
    double ratio_qc;
    double ratio_nsq;
};

BoundsReport bounds_report(const Scenario& s);

}  // namespace maxbell
