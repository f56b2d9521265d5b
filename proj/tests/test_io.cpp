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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "maxbell/bounds.hpp"
#include "maxbell/expression.hpp"
#include "maxbell/io.hpp"
#include "oracles.hpp"

using namespace maxbell;
namespace oracle = maxbell::testing;

TEST_CASE("behaviour json round trip is bit-exact") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 2 + trial % 3;
        const int d = 2 + trial % 4;
        const Behaviour original = oracle::random_behaviour(m, d, rng);
        const Behaviour parsed = behaviour_from_json(behaviour_to_json(original));
        REQUIRE(parsed.settings() == m);
        REQUIRE(parsed.outcomes() == d);
        for (std::size_t i = 0; i < original.data().size(); ++i)
            CHECK(parsed.data()[i] == original.data()[i]);  // exact doubles
    }
}

TEST_CASE("ns-point round trip re-evaluates identically") {
    const Scenario s(2, 2);
    const Behaviour b = ns_extremal_behaviour(s);
    const Behaviour parsed = behaviour_from_json(behaviour_to_json(b));
    CHECK(correlator_form_value(s, parsed) == correlator_form_value(s, b));  // 0 ulp drift
}

TEST_CASE("behaviour document shape") {
    const Behaviour b = Behaviour::uniform(3, 4);
    const std::string doc = behaviour_to_json(b);
    CHECK(doc.find("\"layout\":\"xyab\"") != std::string::npos);
    const Behaviour parsed = behaviour_from_json(doc);
    CHECK(parsed.data().size() == static_cast<std::size_t>(3 * 3 * 4 * 4));
}

TEST_CASE("layout validation") {
    CHECK_THROWS_AS(
        behaviour_from_json(R"({"m":2,"d":2,"layout":"abxy","p":[0.25]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(behaviour_from_json(R"({"m":2,"d":2,"p":[0.25]})"), std::invalid_argument);
    // wrong length
    CHECK_THROWS_AS(
        behaviour_from_json(R"({"m":2,"d":2,"layout":"xyab","p":[0.25,0.25]})"),
        std::invalid_argument);
}

TEST_CASE("format_double round trips") {
    for (double v : {1.0 / 3.0, 2.3094010767585029, 1e-300, 0.1 + 0.2, -0.0, 4.0}) {
        const std::string text = format_double(v);
        CHECK(std::stod(text) == v);
    }
}

TEST_CASE("json writer escaping and structure") {
    JsonWriter w;
    w.begin_object();
    w.key("text").value("quote\"backslash\\end");
    w.key("flag").value(true);
    w.key("n").value(3);
    w.key("list").begin_array().value(1.5).value(2.5).end_array();
    w.end_object();
    CHECK(w.str() ==
          R"({"text":"quote\"backslash\\end","flag":true,"n":3,"list":[1.5,2.5]})");
}

TEST_CASE("ratio table csv format") {
    const auto [qc, nsq] = ratio_tables(4, 3);
    const std::string csv = ratio_table_to_csv(qc);
    CHECK(csv.find("d\\m,2,3,4\n") == 0);
    CHECK(csv.find("2,1.414,1.299,1.232\n") != std::string::npos);
    CHECK(csv.find("3,1.291,1.214,1.167\n") != std::string::npos);
    CHECK(csv.back() == '\n');
    CHECK(csv.find(',') != std::string::npos);
    CHECK(csv.find(';') == std::string::npos);  // locale-independent separator
}
