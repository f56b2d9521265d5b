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
//
// Batch front end: coefficient dumps, bound reports, SOS certification,
// ratio tables, noise scans, entropy reports and the extremal no-signalling
// point, as JSON/CSV/text. Exit codes: 0 success, 1 usage error, 2 a
// mathematical check failed.

#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxbell/analysis.hpp"
#include "maxbell/bounds.hpp"
#include "maxbell/expression.hpp"
#include "maxbell/io.hpp"
#include "maxbell/kernel.hpp"
#include "maxbell/scenario.hpp"
#include "maxbell/sos.hpp"

namespace {

using namespace maxbell;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

struct Range {
    int lo = 2;
    int hi = 2;
};

Range parse_range(const std::string& text) {
    const auto sep = text.find("..");
    try {
        if (sep == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        const int lo = std::stoi(text.substr(0, sep));
        const int hi = std::stoi(text.substr(sep + 2));
        if (lo > hi) throw std::invalid_argument("empty range");
        return {lo, hi};
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "expected N or N..M with N <= M, got '" + text + "'");
    }
}

std::vector<double> parse_eta_grid(const std::string& text) {
    // start:end:count, inclusive endpoints
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? 0 : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw CLI::ValidationError("eta", "expected start:end:count, got '" + text + "'");
    double start = 0.0, end = 0.0;
    int count = 0;
    try {
        start = std::stod(text.substr(0, first));
        end = std::stod(text.substr(first + 1, second - first - 1));
        count = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("eta", "expected start:end:count, got '" + text + "'");
    }
    if (count < 2 || start < 0.0 || end > 1.0 || start >= end)
        throw CLI::ValidationError("eta", "need 0 <= start < end <= 1 and count >= 2");
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) grid[i] = start + (end - start) * i / (count - 1);
    return grid;
}

std::vector<double> parse_gamma(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            out.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw CLI::ValidationError("gamma", "expected comma-separated reals, got '" + text +
                                                    "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void emit(const std::string& text) { std::fwrite(text.data(), 1, text.size(), stdout); }

int run_coeffs(int m, int d, const std::string& set_name, const std::string& output) {
    const Scenario s(m, d);
    const CoefficientSet coeffs =
        set_name == "cglmp" ? cglmp_coefficients(d) : tailored_coefficients(s);
    const ProbabilityForm form(s, coeffs);
    const auto a = correlator_weights(s, coeffs);

    if (output == "text") {
        std::printf("scenario m=%d d=%d, %s coefficients\n", m, d, set_name.c_str());
        for (int k = 0; k < coeffs.size(); ++k)
            std::printf("  alpha_%d = %+.10f   beta_%d = %+.10f\n", k, coeffs.alpha()[k], k,
                        coeffs.beta()[k]);
        std::printf("  folded weights:");
        for (double w : form.folded_weights()) std::printf(" %+.10f", w);
        std::printf("\n  correlator weights a_l:");
        for (const auto& al : a) std::printf(" (%+.7f%+.7fi)", al.real(), al.imag());
        std::printf("\n  S = %.10f (closed form %.10f)\n", coefficient_sum(coeffs), s_value(s));
        return kExitOk;
    }
    if (output == "csv") {
        std::string out = "k,alpha,beta,folded_weight_k,a_re,a_im\n";
        char line[160];
        const auto& w = form.folded_weights();
        for (int k = 0; k < d; ++k) {
            const double alpha = k < coeffs.size() ? coeffs.alpha()[k] : 0.0;
            const double beta = k < coeffs.size() ? coeffs.beta()[k] : 0.0;
            const double a_re = k >= 1 ? a[k - 1].real() : 0.0;
            const double a_im = k >= 1 ? a[k - 1].imag() : 0.0;
            std::snprintf(line, sizeof line, "%d,%.10f,%.10f,%.10f,%.10f,%.10f\n", k, alpha,
                          beta, w[k], a_re, a_im);
            out += line;
        }
        emit(out);
        return kExitOk;
    }

    JsonWriter w;
    w.begin_object();
    w.key("command").value("coeffs");
    w.key("m").value(m);
    w.key("d").value(d);
    w.key("set").value(set_name);
    w.key("alpha").value(coeffs.alpha());
    w.key("beta").value(coeffs.beta());
    w.key("folded_weights").value(form.folded_weights());
    w.key("correlator_weights").begin_array();
    for (const auto& al : a) {
        w.begin_array().value(al.real()).value(al.imag()).end_array();
    }
    w.end_array();
    w.key("coefficient_sum").value(coefficient_sum(coeffs));
    w.key("s_value").value(s_value(s));
    w.end_object();
    emit(w.str() + "\n");
    return kExitOk;
}

int run_bounds(Range mr, Range dr, bool brute_force, std::uint64_t budget, double tol,
               const std::string& output) {
    struct Row {
        BoundsReport report;
        bool ordering_ok;
        double bf_value = 0.0, dp_value = 0.0, max_disagreement = 0.0;
        bool agree = true;
        bool bf_within_budget = true;
    };
    std::vector<Row> rows;
    bool all_ok = true;
    for (int m = mr.lo; m <= mr.hi; ++m)
        for (int d = dr.lo; d <= dr.hi; ++d) {
            const Scenario s(m, d);
            Row row{bounds_report(s), false};
            row.ordering_ok = row.report.classical < row.report.quantum &&
                              row.report.quantum < row.report.no_signalling;
            if (brute_force) {
                const bool single_cell = mr.lo == mr.hi && dr.lo == dr.hi;
                row.dp_value = hatted_to_correlator_units(s, classical_bound_dp(s));
                row.max_disagreement = std::abs(row.dp_value - row.report.classical);
                try {
                    const auto bf =
                        classical_bound_bruteforce(s, tailored_coefficients(s), budget);
                    row.bf_value = bf.correlator_form_value;
                    row.max_disagreement =
                        std::max(row.max_disagreement,
                                 std::abs(row.bf_value - row.report.classical));
                } catch (const std::runtime_error&) {
                    if (single_cell) throw;  // explicit request, report the budget error
                    row.bf_within_budget = false;  // scan semantics: skip and record
                }
                row.agree = row.max_disagreement <= tol;
            }
            all_ok = all_ok && row.ordering_ok && row.agree;
            rows.push_back(row);
        }

    if (output == "csv") {
        std::string out =
            "m,d,classical,quantum,no_signalling,algebraic_probability_form,ratio_qc,ratio_nsq\n";
        char line[256];
        for (const auto& row : rows) {
            std::snprintf(line, sizeof line, "%d,%d,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f\n",
                          row.report.scenario.settings(), row.report.scenario.outcomes(),
                          row.report.classical, row.report.quantum, row.report.no_signalling,
                          row.report.algebraic_probability_form, row.report.ratio_qc,
                          row.report.ratio_nsq);
            out += line;
        }
        emit(out);
    } else if (output == "text") {
        for (const auto& row : rows)
            std::printf("m=%d d=%d  C=%.7f  Q=%.7f  NS=%.7f  Q/C=%.3f  NS/Q=%.3f%s\n",
                        row.report.scenario.settings(), row.report.scenario.outcomes(),
                        row.report.classical, row.report.quantum, row.report.no_signalling,
                        row.report.ratio_qc, row.report.ratio_nsq,
                        row.ordering_ok && row.agree ? "" : "  [CHECK FAILED]");
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("command").value("bounds");
        w.key("tolerance").value(tol);
        w.key("results").begin_array();
        for (const auto& row : rows) {
            w.begin_object();
            w.key("m").value(row.report.scenario.settings());
            w.key("d").value(row.report.scenario.outcomes());
            w.key("classical").value(row.report.classical);
            w.key("quantum").value(row.report.quantum);
            w.key("no_signalling").value(row.report.no_signalling);
            w.key("algebraic_probability_form").value(row.report.algebraic_probability_form);
            w.key("ratio_qc").value(row.report.ratio_qc);
            w.key("ratio_nsq").value(row.report.ratio_nsq);
            w.key("ordering_ok").value(row.ordering_ok);
            if (brute_force) {
                w.key("dynamic_program").value(row.dp_value);
                if (row.bf_within_budget) w.key("brute_force").value(row.bf_value);
                w.key("brute_force_within_budget").value(row.bf_within_budget);
                w.key("max_disagreement").value(row.max_disagreement);
                w.key("agree").value(row.agree);
            }
            w.end_object();
        }
        w.end_array();
        w.key("all_ok").value(all_ok);
        w.end_object();
        emit(w.str() + "\n");
    }
    return all_ok ? kExitOk : kExitCheckFailed;
}

int run_certify_sos(Range mr, Range dr, int random_sets, std::uint64_t seed, double tol,
                    const std::string& output) {
    struct Run {
        int m, d;
        std::string provenance;
        SosCertificate cert;
    };
    std::vector<Run> runs;
    std::mt19937_64 rng(seed);
    for (int m = mr.lo; m <= mr.hi; ++m)
        for (int d = dr.lo; d <= dr.hi; ++d) {
            const Scenario s(m, d);
            runs.push_back({m, d, "cglmp",
                            sos_residual(s, cglmp_observables(s, Side::alice),
                                         cglmp_observables(s, Side::bob),
                                         MeasurementProvenance::cglmp)});
            for (int r = 0; r < random_sets; ++r)
                runs.push_back({m, d, "random",
                                sos_residual(s, random_projective_observables(m, d, Side::alice, rng),
                                             random_projective_observables(m, d, Side::bob, rng),
                                             MeasurementProvenance::random)});
        }
    bool all_ok = true;
    for (const auto& run : runs) all_ok = all_ok && run.cert.valid(tol);

    if (output == "text") {
        for (const auto& run : runs)
            std::printf("m=%d d=%d %-6s residual=%.3e frobenius=%.3e min_eig_shifted=%+.3e %s\n",
                        run.m, run.d, run.provenance.c_str(), run.cert.residual_spectral_norm,
                        run.cert.residual_frobenius_norm, run.cert.min_eigenvalue_shifted,
                        run.cert.valid(tol) ? "ok" : "FAILED");
        std::printf("%s\n", all_ok ? "all certificates valid" : "CERTIFICATION FAILED");
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("command").value("certify-sos");
        w.key("tolerance").value(tol);
        w.key("seed").value(seed);
        w.key("random_sets_per_scenario").value(random_sets);
        w.key("runs").begin_array();
        for (const auto& run : runs) {
            w.begin_object();
            w.key("m").value(run.m);
            w.key("d").value(run.d);
            w.key("provenance").value(run.provenance);
            w.key("residual_spectral_norm").value(run.cert.residual_spectral_norm);
            w.key("residual_frobenius_norm").value(run.cert.residual_frobenius_norm);
            w.key("min_eigenvalue_shifted").value(run.cert.min_eigenvalue_shifted);
            w.key("ok").value(run.cert.valid(tol));
            w.end_object();
        }
        w.end_array();
        w.key("all_ok").value(all_ok);
        w.end_object();
        emit(w.str() + "\n");
    }
    return all_ok ? kExitOk : kExitCheckFailed;
}

int run_table(const std::string& kind, Range mr, Range dr, const std::string& output) {
    if (mr.lo != 2 || dr.lo != 2)
        throw CLI::ValidationError("table", "tables are anchored at m=2, d=2");
    auto [qc, nsq] = ratio_tables(mr.hi, dr.hi);
    const RatioTable& table = (kind == "qc") ? qc : nsq;

    if (output == "json") {
        JsonWriter w;
        w.begin_object();
        w.key("command").value("table");
        w.key("kind").value(kind);
        w.key("m_values").begin_array();
        for (int m : table.m_values) w.value(m);
        w.end_array();
        w.key("d_values").begin_array();
        for (int d : table.d_values) w.value(d);
        w.end_array();
        w.key("entries").begin_array();
        for (const auto& row : table.entries) w.value(row);
        w.end_array();
        w.end_object();
        emit(w.str() + "\n");
    } else {
        emit(ratio_table_to_csv(table));
    }
    return kExitOk;
}

int run_noise_scan(int m, int d, const std::string& eta_spec, double tol,
                   const std::string& output) {
    const Scenario s(m, d);
    const std::vector<double> grid = parse_eta_grid(eta_spec);
    const auto curve = violation_vs_noise(s, grid);
    const double qb = quantum_bound(s);
    double max_deviation = 0.0;
    for (const auto& point : curve)
        max_deviation = std::max(max_deviation, std::abs(point.value - (1.0 - point.eta) * qb));
    const bool ok = max_deviation <= tol;

    if (output == "csv") {
        std::string out = "eta,value,expected\n";
        char line[128];
        for (const auto& point : curve) {
            std::snprintf(line, sizeof line, "%.10f,%.10f,%.10f\n", point.eta, point.value,
                          (1.0 - point.eta) * qb);
            out += line;
        }
        emit(out);
    } else if (output == "text") {
        for (const auto& point : curve)
            std::printf("eta=%.4f  I~=%.10f  expected=%.10f\n", point.eta, point.value,
                        (1.0 - point.eta) * qb);
        std::printf("max deviation from line: %.3e (%s)\n", max_deviation, ok ? "ok" : "FAILED");
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("command").value("noise-scan");
        w.key("m").value(m);
        w.key("d").value(d);
        w.key("critical_visibility").value(critical_visibility(s));
        w.key("points").begin_array();
        for (const auto& point : curve) {
            w.begin_object();
            w.key("eta").value(point.eta);
            w.key("value").value(point.value);
            w.key("expected").value((1.0 - point.eta) * qb);
            w.end_object();
        }
        w.end_array();
        w.key("max_deviation").value(max_deviation);
        w.key("ok").value(ok);
        w.end_object();
        emit(w.str() + "\n");
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int run_entropy(int m, int d, const std::string& gamma_spec, const std::string& output) {
    if (output == "csv") throw CLI::ValidationError("output", "entropy has no csv form");
    const Scenario s(m, d);
    Eigen::VectorXd gamma;
    if (gamma_spec.empty()) {
        gamma = Eigen::VectorXd::Ones(d);
    } else {
        const auto values = parse_gamma(gamma_spec);
        if (static_cast<int>(values.size()) != d)
            throw CLI::ValidationError("gamma", "need exactly d Schmidt coefficients");
        gamma = Eigen::Map<const Eigen::VectorXd>(values.data(), d);
    }
    const Ket state = schmidt_state(gamma);
    const KeyEntropyReport report = key_entropy_report(s, state);
    const Behaviour key = key_settings_behaviour(s, state, KeyConvention::conjugate);
    const double mi = mutual_information(key, 1, 1);
    const double ee = entanglement_entropy(state);

    if (output == "text") {
        std::printf("d=%d state gamma = (", d);
        for (int q = 0; q < d; ++q)
            std::printf("%s%.7f", q ? ", " : "", state.schmidt()->operator[](q));
        std::printf(")\n");
        std::printf("H(A_1|B_3) conjugate convention  = %.10f dits\n",
                    report.conditional_entropy_conjugate);
        std::printf("H(A_1|B_3) same-matrix convention = %.10f dits\n",
                    report.conditional_entropy_same_matrix);
        std::printf("I(A_1:B_3) = %.10f dits\n", mi);
        std::printf("entanglement entropy = %.10f dits\n", ee);
        return kExitOk;
    }

    JsonWriter w;
    w.begin_object();
    w.key("command").value("entropy");
    w.key("m").value(m);
    w.key("d").value(d);
    w.key("gamma").begin_array();
    for (int q = 0; q < d; ++q) w.value(state.schmidt()->operator[](q));
    w.end_array();
    w.key("conditional_entropy_conjugate").value(report.conditional_entropy_conjugate);
    w.key("conditional_entropy_same_matrix").value(report.conditional_entropy_same_matrix);
    w.key("mutual_information").value(mi);
    w.key("entanglement_entropy").value(ee);
    w.key("log_base").value(d);
    w.end_object();
    emit(w.str() + "\n");
    return kExitOk;
}

int run_ns_point(int m, int d, double tol, const std::string& output) {
    if (output == "csv") throw CLI::ValidationError("output", "ns-point has no csv form");
    const Scenario s(m, d);
    const Behaviour b = ns_extremal_behaviour(s);
    const auto ns = check_no_signalling(b, 1e-12);
    const double value = correlator_form_value(s, b);
    const double bound = ns_bound(s);
    const bool ok = ns.ok && std::abs(value - bound) <= tol;

    if (output == "text") {
        std::printf("m=%d d=%d extremal no-signalling point\n", m, d);
        std::printf("I~ = %.10f, NS bound = %.10f, NS max violation = %.3e (%s)\n", value, bound,
                    ns.max_violation, ok ? "ok" : "FAILED");
        return ok ? kExitOk : kExitCheckFailed;
    }

    JsonWriter w;
    w.begin_object();
    w.key("command").value("ns-point");
    w.key("behaviour").begin_object();
    w.key("m").value(b.settings());
    w.key("d").value(b.outcomes());
    w.key("layout").value("xyab");
    w.key("p").value(b.data());
    w.end_object();
    w.key("correlator_form_value").value(value);
    w.key("ns_bound").value(bound);
    w.key("no_signalling_max_violation").value(ns.max_violation);
    w.key("ok").value(ok);
    w.end_object();
    emit(w.str() + "\n");
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workbench for the Bell inequalities maximally violated by maximally "
                 "entangled states"};
    app.require_subcommand(1);

    std::string m_spec = "2", d_spec = "2", output = "json";
    double tol = 1e-9;
    std::uint64_t seed = 0, budget = 100'000'000;

    auto add_common = [&](CLI::App* cmd, bool ranged, bool m_required = true) {
        auto* m_opt = cmd->add_option("--m", m_spec, ranged ? "settings, N or N..M" : "settings");
        if (m_required) m_opt->required();
        cmd->add_option("--d", d_spec, ranged ? "outcomes, N or N..M" : "outcomes")->required();
        cmd->add_option("--tol", tol, "tolerance for the mathematical checks");
        return cmd->add_option("--output", output, "json|csv|text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    };

    auto* coeffs = app.add_subcommand("coeffs", "dump the expression coefficients");
    std::string set_name = "tailored";
    add_common(coeffs, false);
    coeffs->add_option("--set", set_name, "tailored|cglmp")
        ->check(CLI::IsMember({"tailored", "cglmp"}));

    auto* bounds = app.add_subcommand("bounds", "classical/quantum/no-signalling bounds");
    add_common(bounds, true);
    bool brute = false;
    bounds->add_flag("--brute-force", brute, "cross-check with DP and exhaustive enumeration");
    bounds->add_option("--budget", budget, "enumeration cap for --brute-force");

    auto* certify = app.add_subcommand("certify-sos", "certify the SOS operator identity");
    add_common(certify, true);
    int random_sets = 0;
    certify->add_option("--random", random_sets, "random measurement sets per scenario");
    certify->add_option("--seed", seed, "RNG seed, recorded in the output");

    auto* table = app.add_subcommand("table", "ratio tables Q/C or NS/Q");
    std::string kind = "qc";
    auto* table_output = add_common(table, true);
    table->add_option("--kind", kind, "qc|nsq")->check(CLI::IsMember({"qc", "nsq"}));

    auto* noise = app.add_subcommand("noise-scan", "Bell value under white noise");
    add_common(noise, false);
    std::string eta_spec = "0:1:11";
    noise->add_option("--eta", eta_spec, "grid start:end:count");

    auto* entropy = app.add_subcommand("entropy", "key-setting entropy report");
    add_common(entropy, false, /*m_required=*/false);
    std::string gamma_spec;
    entropy->add_option("--gamma", gamma_spec, "comma-separated Schmidt coefficients");

    auto* ns_point = app.add_subcommand("ns-point", "extremal no-signalling behaviour");
    add_common(ns_point, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (tol <= 0.0) throw CLI::ValidationError("tol", "tolerance must be positive");
        const Range mr = parse_range(m_spec);
        const Range dr = parse_range(d_spec);
        if (coeffs->parsed()) return run_coeffs(mr.lo, dr.lo, set_name, output);
        if (bounds->parsed()) return run_bounds(mr, dr, brute, budget, tol, output);
        if (certify->parsed()) return run_certify_sos(mr, dr, random_sets, seed, tol, output);
        if (table->parsed())
            return run_table(kind, mr, dr, table_output->count() ? output : "csv");
        if (noise->parsed()) return run_noise_scan(mr.lo, dr.lo, eta_spec, tol, output);
        if (entropy->parsed()) return run_entropy(mr.lo, dr.lo, gamma_spec, output);
        if (ns_point->parsed()) return run_ns_point(mr.lo, dr.lo, tol, output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
