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

#include "maxbell/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace maxbell {

namespace {
constexpr double kPi = std::numbers::pi;
}

int DeterministicStrategy::derived_last(int outcomes) const {
    int sum = 0;
    for (int q : differences) sum = (sum + q) % outcomes;
    return (2 * outcomes - 1 - sum) % outcomes;  // (-1 - sum) mod d
}

void DeterministicStrategy::realize(int settings, int outcomes, std::vector<int>& a_of_x,
                                    std::vector<int>& b_of_y) const {
    if (static_cast<int>(differences.size()) != 2 * settings - 1)
        throw std::invalid_argument("DeterministicStrategy::realize: wrong length");
    a_of_x.assign(settings, 0);
    b_of_y.assign(settings, 0);
    // A_1 = 0; walk the chain A_1 - B_1 = q_1, B_1 - A_2 = q_2, ...
    for (int i = 1; i <= settings; ++i) {
        b_of_y[i - 1] = ((a_of_x[i - 1] - differences[2 * i - 2]) % outcomes + outcomes) % outcomes;
        if (i < settings)
            a_of_x[i] = ((b_of_y[i - 1] - differences[2 * i - 1]) % outcomes + outcomes) % outcomes;
    }
}

double strategy_value(const ProbabilityForm& form, const DeterministicStrategy& strategy) {
    const int d = form.scenario().outcomes();
    const auto& w = form.folded_weights();
    if (static_cast<int>(strategy.differences.size()) != 2 * form.scenario().settings() - 1)
        throw std::invalid_argument("strategy_value: wrong strategy length");
    double total = 0.0;
    for (int q : strategy.differences) total += w[q];
    return total + w[strategy.derived_last(d)];
}

double classical_bound(const Scenario& s) {
    const int m = s.settings();
    const double t = std::tan(kPi / (2.0 * m));
    return 0.5 * t * ((2.0 * m - 1.0) * g_func(s, 0.0) - g_func(s, 1.0 - 1.0 / m)) - m;
}

double classical_bound_dp(const Scenario& s) {
    const int m = s.settings();
    const int d = s.outcomes();
    std::vector<double> hatted(d);
    for (int k = 0; k < d; ++k) hatted[k] = g_func(s, k);

    // Terminal layer: only the superselected difference remains.
    std::vector<double> value(d);
    for (int r = 0; r < d; ++r) value[r] = hatted[(2 * d - 1 - r) % d];

    std::vector<double> next(d);
    for (int position = 2 * m - 1; position >= 1; --position) {
        for (int r = 0; r < d; ++r) {
            double best = -std::numeric_limits<double>::infinity();
            for (int q = 0; q < d; ++q) best = std::max(best, hatted[q] + value[(r + q) % d]);
            next[r] = best;
        }
        std::swap(value, next);
    }
    return value[0];
}

double hatted_to_correlator_units(const Scenario& s, double hatted) {
    return 0.5 * std::tan(kPi / (2.0 * s.settings())) * hatted - s.settings();
}

namespace {

struct BestStrategy {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<int> q;
};

// Depth-first scan of the remaining digits in lexicographic order. Equal-value
// strategies must resolve to the lexicographically smallest one, but the
// running sum depends on the summation order, so near-maximal leaves are
// re-evaluated canonically (indices sorted ascending); strategies using the
// same multiset of weights then produce the identical double and the first
// maximizer encountered is kept.
void scan(const std::vector<double>& w, int d, int remaining, int residue, double acc,
          double margin, std::vector<int>& q, std::vector<int>& scratch, BestStrategy& best) {
    if (remaining == 0) {
        const int last = (2 * d - 1 - residue) % d;
        if (acc + w[last] < best.value - margin) return;
        scratch = q;
        scratch.push_back(last);
        std::sort(scratch.begin(), scratch.end());
        double canonical = 0.0;
        for (int k : scratch) canonical += w[k];
        if (canonical > best.value) {
            best.value = canonical;
            best.q = q;
        }
        return;
    }
    for (int v = 0; v < d; ++v) {
        q.push_back(v);
        scan(w, d, remaining - 1, (residue + v) % d, acc + w[v], margin, q, scratch, best);
        q.pop_back();
    }
}

}  // namespace

BruteForceResult classical_bound_bruteforce(const Scenario& s, const CoefficientSet& c,
                                            std::uint64_t budget) {
    const int m = s.settings();
    const int d = s.outcomes();
    const int digits = 2 * m - 1;

    std::uint64_t count = 1;
    for (int i = 0; i < digits; ++i) {
        if (count > budget / static_cast<std::uint64_t>(d))
            throw std::runtime_error("classical_bound_bruteforce: d^(2m-1) exceeds budget");
        count *= static_cast<std::uint64_t>(d);
    }

    const ProbabilityForm form(s, c);
    const std::vector<double>& w = form.folded_weights();

    // Pruning slack for the canonical re-evaluation; must dominate the
    // float discrepancy between summation orders at the weights' scale.
    double max_weight = 0.0;
    for (double v : w) max_weight = std::max(max_weight, std::abs(v));
    const double margin = 1e-9 * std::max(1.0, 2.0 * m * max_weight);

    // Partition on the first one or two digits; workers pull prefixes from a
    // shared counter, results are merged in prefix order so ties resolve to
    // the lexicographically smallest strategy regardless of scheduling.
    const int prefix_digits = (digits >= 2 && d < 16) ? 2 : 1;
    const int prefix_count = (prefix_digits == 2) ? d * d : d;
    std::vector<BestStrategy> per_prefix(prefix_count);

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        std::min<unsigned>(hw, static_cast<unsigned>(prefix_count));

    std::atomic<int> next_prefix{0};
    auto work = [&]() {
        for (;;) {
            const int prefix = next_prefix.fetch_add(1);
            if (prefix >= prefix_count) return;
            std::vector<int> q;
            std::vector<int> scratch;
            double acc = 0.0;
            int residue = 0;
            if (prefix_digits == 2) {
                q = {prefix / d, prefix % d};
            } else {
                q = {prefix};
            }
            for (int v : q) {
                acc += w[v];
                residue = (residue + v) % d;
            }
            scan(w, d, digits - prefix_digits, residue, acc, margin, q, scratch,
                 per_prefix[prefix]);
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    BestStrategy best;
    for (const auto& candidate : per_prefix)
        if (candidate.value > best.value) best = candidate;

    BruteForceResult result;
    result.probability_form_value = best.value;
    result.correlator_form_value =
        d * best.value - 2.0 * m * coefficient_sum(c);
    result.argmax = DeterministicStrategy{best.q};
    result.strategies = count;
    return result;
}

double quantum_bound(const Scenario& s) {
    return static_cast<double>(s.settings()) * (s.outcomes() - 1);
}

double quantum_value_at_optimal(const Scenario& s) {
    const Behaviour b = behaviour_from_quantum(max_entangled(s.outcomes()),
                                               cglmp_observables(s, Side::alice),
                                               cglmp_observables(s, Side::bob));
    return correlator_form_value(s, b);
}

double ns_bound(const Scenario& s) {
    const int m = s.settings();
    return m * std::tan(kPi / (2.0 * m)) * g_func(s, 0.0) - m;
}

Behaviour ns_extremal_behaviour(const Scenario& s) {
    const int m = s.settings();
    const int d = s.outcomes();
    const double correlated = 1.0 / d;
    const double uniform = 1.0 / (static_cast<double>(d) * d);

    std::vector<double> p(static_cast<std::size_t>(m) * m * d * d, 0.0);
    for (int x = 1; x <= m; ++x)
        for (int y = 1; y <= m; ++y) {
            const bool diagonal = (x == y) || (x == y + 1);
            const bool wrap = (x == 1 && y == m);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    double v = uniform;
                    if (diagonal)
                        v = (a == b) ? correlated : 0.0;
                    else if (wrap)
                        v = (a == (b + d - 1) % d) ? correlated : 0.0;
                    p[Behaviour::flat_index(m, d, x, y, a, b)] = v;
                }
        }
    return Behaviour(m, d, std::move(p));
}

BoundsReport bounds_report(const Scenario& s) {
    BoundsReport report{s,
                        classical_bound(s),
                        quantum_bound(s),
                        ns_bound(s),
                        2.0 * s.settings() * tailored_coefficients(s).alpha()[0],
                        0.0,
                        0.0};
    report.ratio_qc = report.quantum / report.classical;
    report.ratio_nsq = report.no_signalling / report.quantum;
    return report;
}

}  // namespace maxbell
