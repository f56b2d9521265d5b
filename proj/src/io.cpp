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

#include "maxbell/io.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace maxbell {

void JsonWriter::separator() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!needs_comma_.empty()) {
        if (needs_comma_.back()) out_ += ',';
        needs_comma_.back() = true;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_ += '{';
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separator();
    out_ += '[';
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
    separator();
    out_ += '"';
    out_ += name;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
    separator();
    out_ += '"';
    for (char c : v) {
        if (c == '"' || c == '\\') out_ += '\\';
        out_ += c;
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::value(const std::vector<double>& v) {
    begin_array();
    for (double x : v) value(x);
    return end_array();
}

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

std::string behaviour_to_json(const Behaviour& b) {
    JsonWriter w;
    w.begin_object();
    w.key("m").value(b.settings());
    w.key("d").value(b.outcomes());
    w.key("layout").value("xyab");
    w.key("p").value(b.data());
    w.end_object();
    return w.str();
}

Behaviour behaviour_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.contains("layout") || doc.at("layout").get<std::string>() != "xyab")
        throw std::invalid_argument("behaviour_from_json: layout must be \"xyab\"");
    const int m = doc.at("m").get<int>();
    const int d = doc.at("d").get<int>();
    std::vector<double> p = doc.at("p").get<std::vector<double>>();
    const std::size_t expected = static_cast<std::size_t>(m) * m * d * d;
    if (p.size() != expected)
        throw std::invalid_argument("behaviour_from_json: p has wrong length");
    return Behaviour(m, d, std::move(p));
}

std::string ratio_table_to_csv(const RatioTable& table) {
    std::string out = "d\\m";
    for (int m : table.m_values) out += "," + std::to_string(m);
    out += '\n';
    char cell[32];
    for (std::size_t i = 0; i < table.d_values.size(); ++i) {
        out += std::to_string(table.d_values[i]);
        for (double entry : table.entries[i]) {
            std::snprintf(cell, sizeof cell, ",%.3f", entry);
            out += cell;
        }
        out += '\n';
    }
    return out;
}

}  // namespace maxbell
