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

#include <string>
#include <string_view>
#include <vector>

#include "maxbell/analysis.hpp"
#include "maxbell/kernel.hpp"

namespace maxbell {

/// Ordered JSON emitter. Floats are written with 17 significant digits so
/// parsing them back reproduces the exact double; key order is emission
/// order, making equal inputs produce byte-identical documents.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view name);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view v);
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    JsonWriter& value(const std::vector<double>& v);

    std::string str() const { return out_; }

private:
    void separator();

    std::string out_;
    std::vector<bool> needs_comma_;
    bool pending_key_ = false;
};

/// "%.17g" rendering of a double; round-trips bit-exactly through strtod.
std::string format_double(double v);

/// Behaviour document {"m", "d", "layout": "xyab", "p": [...]}; the flat
/// array is the Behaviour's native row-major layout.
std::string behaviour_to_json(const Behaviour& b);

/// Parses a behaviour document, rejecting any layout other than "xyab" and
/// any shape mismatch.
Behaviour behaviour_from_json(const std::string& text);

/// CSV with header row "d\m,2,3,..." and one row per d; 3-decimal entries,
/// '.' decimal separator, '\n' line endings.
std::string ratio_table_to_csv(const RatioTable& table);

}  // namespace maxbell
