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
// End-to-end checks of the installed CLI binary (path injected by CMake).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "maxbell/expression.hpp"
#include "maxbell/io.hpp"

using namespace maxbell;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(MAXBELL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        out.append(buffer.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("bounds command emits the documented values") {
    const auto result = run_cli("bounds --m 2 --d 3");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    const auto& row = doc.at("results").at(0);
    CHECK(row.at("classical").get<double>() == doctest::Approx(3.0980762).epsilon(1e-7));
    CHECK(row.at("quantum").get<double>() == 4.0);
    CHECK(row.at("no_signalling").get<double>() == doctest::Approx(5.4641016).epsilon(1e-7));
    CHECK(row.at("ordering_ok").get<bool>());
}

TEST_CASE("table command matches the published table to 3 decimals") {
    const auto result = run_cli("table --kind qc --m 2..6 --d 2..6");
    CHECK(result.exit_code == 0);
    CHECK(result.out ==
          "d\\m,2,3,4,5,6\n"
          "2,1.414,1.299,1.232,1.189,1.159\n"
          "3,1.291,1.214,1.167,1.137,1.116\n"
          "4,1.252,1.186,1.146,1.120,1.102\n"
          "5,1.233,1.173,1.136,1.112,1.095\n"
          "6,1.222,1.165,1.130,1.107,1.091\n");
    const auto nsq = run_cli("table --kind nsq --m 2..6 --d 2..6");
    CHECK(nsq.out ==
          "d\\m,2,3,4,5,6\n"
          "2,1.414,1.155,1.082,1.051,1.035\n"
          "3,1.366,1.137,1.073,1.046,1.031\n"
          "4,1.342,1.128,1.069,1.043,1.029\n"
          "5,1.328,1.123,1.066,1.041,1.028\n"
          "6,1.319,1.120,1.064,1.040,1.027\n");
}

TEST_CASE("certify-sos runs are deterministic and exit 0") {
    const std::string args = "certify-sos --m 3 --d 3 --random 20 --seed 7";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);  // byte-identical given the seed
    const auto doc = nlohmann::json::parse(first.out);
    CHECK(doc.at("seed").get<std::uint64_t>() == 7);
    CHECK(doc.at("all_ok").get<bool>());
    CHECK(doc.at("runs").size() == 21);  // 1 cglmp + 20 random
    for (const auto& run : doc.at("runs"))
        CHECK(run.at("residual_spectral_norm").get<double>() <= 1e-9);
}

TEST_CASE("an unattainable tolerance fails certification with exit 2") {
    const auto result = run_cli("certify-sos --m 2 --d 2 --tol 1e-20");
    CHECK(result.exit_code == 2);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK_FALSE(doc.at("all_ok").get<bool>());
}

TEST_CASE("range scans skip over-budget cells but keep the DP cross-check") {
    const auto result = run_cli("bounds --m 5..6 --d 6 --brute-force --budget 1000000");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc.at("all_ok").get<bool>());
    for (const auto& row : doc.at("results")) {
        CHECK_FALSE(row.at("brute_force_within_budget").get<bool>());
        CHECK(row.at("agree").get<bool>());  // closed form vs DP
        CHECK(!row.contains("brute_force"));
    }
}

TEST_CASE("different seeds change the random runs") {
    const auto a = run_cli("certify-sos --m 2 --d 3 --random 3 --seed 1");
    const auto b = run_cli("certify-sos --m 2 --d 3 --random 3 --seed 2");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out != b.out);
}

TEST_CASE("ns-point behaviour round-trips through the library parser") {
    const auto result = run_cli("ns-point --m 2 --d 2");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    const Behaviour parsed = behaviour_from_json(doc.at("behaviour").dump());
    const Scenario s(2, 2);
    CHECK(correlator_form_value(s, parsed) ==
          doc.at("correlator_form_value").get<double>());  // bit-exact
    CHECK(doc.at("behaviour").at("p").size() == 16);
    CHECK(doc.at("ok").get<bool>());
}

TEST_CASE("noise-scan stays on the line") {
    const auto result = run_cli("noise-scan --m 2 --d 3 --eta 0:1:5");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc.at("max_deviation").get<double>() <= 1e-9);
    CHECK(doc.at("points").size() == 5);
    CHECK(doc.at("points").at(0).at("value").get<double>() ==
          doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("entropy command reports both conventions") {
    const auto result = run_cli("entropy --d 3 --gamma 1,0.7922853,1");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc.at("conditional_entropy_conjugate").get<double>() ==
          doctest::Approx(0.0618).epsilon(1e-2));
    CHECK(doc.at("conditional_entropy_same_matrix").get<double>() > 0.1);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli("bogus-command").exit_code == 1);
    CHECK(run_cli("bounds --m 2").exit_code == 1);           // missing --d
    CHECK(run_cli("bounds --m 5..2 --d 2").exit_code == 1);  // malformed range
    CHECK(run_cli("bounds --m 1 --d 2").exit_code == 1);     // invalid scenario
    CHECK(run_cli("table --kind zz --m 2..3 --d 2..3").exit_code == 1);
    CHECK(run_cli("noise-scan --m 2 --d 3 --eta nope").exit_code == 1);
    CHECK(run_cli("ns-point --m 2 --d 2 --output csv").exit_code == 1);
    CHECK(run_cli("bounds --m 2 --d 2 --tol -1").exit_code == 1);
    // budget exceeded on an explicit single cell is a configuration error
    CHECK(run_cli("bounds --m 5 --d 7 --brute-force --budget 1000").exit_code == 1);
}

TEST_CASE("identical configs give byte-identical output across commands") {
    for (const std::string args :
         {std::string("bounds --m 2..3 --d 2..4 --brute-force"),
          std::string("coeffs --m 3 --d 5"), std::string("table --kind nsq --m 2..4 --d 2..4"),
          std::string("noise-scan --m 2 --d 2 --eta 0:1:7"),
          std::string("entropy --d 3")}) {
        const auto first = run_cli(args);
        const auto second = run_cli(args);
        CHECK(first.exit_code == 0);
        CHECK(first.out == second.out);
    }
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("bounds --help").exit_code == 0);
}
