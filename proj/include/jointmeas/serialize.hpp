// Copyright 2026 The jointmeas Authors
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

/**
 * @file
 * JSON schemas for the domain types and the formatting used by the CLI.
 *
 * Parsers raise ParseError for structural problems (bad JSON, missing or
 * mistyped keys) and propagate ValidationError, naming the violated
 * constraint, when the numbers break a domain invariant. Serialization
 * emits floats with 17 significant digits, so every value round-trips
 * bit-exactly. Non-finite doubles (the infinite-error signal) serialize
 * as JSON null.
 */

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "jointmeas/bloch.hpp"
#include "jointmeas/channel.hpp"
#include "jointmeas/optimal.hpp"
#include "jointmeas/sequential.hpp"
#include "jointmeas/simulate.hpp"

namespace jointmeas {

/// Insertion-ordered JSON keeps emitted reports in a stable, readable
/// field order.
using Json = nlohmann::ordered_json;

/// Serializes with floats at 17 significant digits (%.17g).
std::string dump_json(const Json& value, int indent = 2);

/// Parses text, mapping syntax errors to ParseError.
Json parse_json(const std::string& text);

/// Reads and parses a file, mapping I/O and syntax errors to ParseError.
Json load_json_file(const std::filesystem::path& path);

Json to_json(const BlochVector& v);
BlochVector bloch_from_json(const Json& j, const char* what = "vector");

/// {"elements": [{"i": "+", "j": "-", "r": ..., "x": [x, y, z]}, x4]}
Json to_json(const JointPovm& povm);
JointPovm povm_from_json(const Json& j);

/// {"n_a": [...], "n_b": [...]}
Json to_json(const ObservablePair& obs);
ObservablePair observables_from_json(const Json& j);

/// {"r": [x, y, z]}
Json to_json(const QubitState& state);
QubitState state_from_json(const Json& j);

/// {"f": [[..], [..]], "accuracy": ..., "error": ..., "orientation": +-1}
Json to_json(const NonidealChannel& channel);

Json to_json(const ConformityVerdict& verdict);
Json to_json(const TradeoffVerdict& verdict);
Json to_json(const ErrorProductVerdict& verdict);

/// {"n": ..., "counts": [{"i": "+", "j": "-", "count": ...}, x4]}
Json to_json(const OutcomeCounts& counts);
OutcomeCounts counts_from_json(const Json& j);

Json to_json(const EstimationReport& report);
Json to_json(const ExperimentReport& report);
Json to_json(const DisturbanceReport& report);

/// Sweep rows as "theta,x_a_target,x_b_achieved,x_b_boundary,gap" CSV.
std::string sweep_to_csv(const SweepResult& result);
Json to_json(const SweepResult& result, bool include_witnesses = false);

/// One float with 17 significant digits; used for CSV rows.
std::string format_double(double value);

} // namespace jointmeas
