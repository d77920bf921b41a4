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

#include "jointmeas/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace jointmeas {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

void dump_value(const Json& value, std::ostringstream& out, int indent,
                int depth) {
    const std::string pad(static_cast<std::size_t>(indent * depth), ' ');
    const std::string child_pad(
        static_cast<std::size_t>(indent * (depth + 1)), ' ');
    switch (value.type()) {
        case Json::value_t::number_float: {
            const double d = value.get<double>();
            // JSON has no representation for non-finite numbers; the CLI
            // documents null as the infinite-error signal.
            out << (std::isfinite(d) ? format_double(d) : "null");
            break;
        }
        case Json::value_t::array: {
            if (value.empty()) {
                out << "[]";
                break;
            }
            out << "[\n";
            for (std::size_t k = 0; k < value.size(); ++k) {
                out << child_pad;
                dump_value(value[k], out, indent, depth + 1);
                out << (k + 1 < value.size() ? "," : "") << "\n";
            }
            out << pad << "]";
            break;
        }
        case Json::value_t::object: {
            if (value.empty()) {
                out << "{}";
                break;
            }
            out << "{\n";
            std::size_t k = 0;
            for (const auto& [key, entry] : value.items()) {
                out << child_pad << Json(key).dump() << ": ";
                dump_value(entry, out, indent, depth + 1);
                out << (++k < value.size() ? "," : "") << "\n";
            }
            out << pad << "}";
            break;
        }
        default:
            out << value.dump();
            break;
    }
}

double require_number(const Json& j, const char* what) {
    if (!j.is_number()) {
        throw ParseError(std::string(what) + " must be a number");
    }
    return j.get<double>();
}

const Json& require_key(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing key \"") + key + "\"");
    }
    return j.at(key);
}

Sign sign_from_json(const Json& j, const char* what) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "+") {
            return Sign::Plus;
        }
        if (s == "-") {
            return Sign::Minus;
        }
    }
    throw ParseError(std::string(what) + " must be \"+\" or \"-\"");
}

} // namespace

std::string dump_json(const Json& value, int indent) {
    std::ostringstream out;
    dump_value(value, out, indent, 0);
    out << "\n";
    return out.str();
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

Json load_json_file(const std::filesystem::path& path) {
    std::ifstream input(path);
    if (!input) {
        throw ParseError("cannot open file: " + path.string());
    }
    std::ostringstream text;
    text << input.rdbuf();
    return parse_json(text.str());
}

Json to_json(const BlochVector& v) { return Json::array({v.x, v.y, v.z}); }

BlochVector bloch_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError(std::string(what) +
                         " must be an array of three numbers");
    }
    return {require_number(j[0], what), require_number(j[1], what),
            require_number(j[2], what)};
}

Json to_json(const JointPovm& povm) {
    Json elements = Json::array();
    for (int k = 0; k < JointPovm::kElements; ++k) {
        const auto& e = povm.elements()[static_cast<std::size_t>(k)];
        elements.push_back(
            {{"i", std::string(1, sign_char(JointPovm::outcome_a(k)))},
             {"j", std::string(1, sign_char(JointPovm::outcome_b(k)))},
             {"r", e.r_coef()},
             {"x", to_json(e.x())}});
    }
    return Json{{"elements", std::move(elements)}};
}

JointPovm povm_from_json(const Json& j) {
    const Json& elements = require_key(j, "elements");
    if (!elements.is_array() || elements.size() != 4) {
        throw ParseError("\"elements\" must be an array of four records");
    }
    std::array<bool, 4> seen{};
    std::array<double, 4> r{};
    std::array<BlochVector, 4> x{};
    for (const auto& record : elements) {
        const Sign i = sign_from_json(require_key(record, "i"), "outcome i");
        const Sign jj = sign_from_json(require_key(record, "j"), "outcome j");
        const int index = JointPovm::index(i, jj);
        if (seen[static_cast<std::size_t>(index)]) {
            throw ParseError("duplicate outcome pair in \"elements\"");
        }
        seen[static_cast<std::size_t>(index)] = true;
        r[static_cast<std::size_t>(index)] =
            require_number(require_key(record, "r"), "\"r\"");
        x[static_cast<std::size_t>(index)] =
            bloch_from_json(require_key(record, "x"), "\"x\"");
    }
    return JointPovm({PovmElement(r[0], x[0]), PovmElement(r[1], x[1]),
                      PovmElement(r[2], x[2]), PovmElement(r[3], x[3])});
}

Json to_json(const ObservablePair& obs) {
    return Json{{"n_a", to_json(obs.n_a())}, {"n_b", to_json(obs.n_b())}};
}

ObservablePair observables_from_json(const Json& j) {
    return ObservablePair(bloch_from_json(require_key(j, "n_a"), "\"n_a\""),
                          bloch_from_json(require_key(j, "n_b"), "\"n_b\""));
}

Json to_json(const QubitState& state) {
    return Json{{"r", to_json(state.polarization())}};
}

QubitState state_from_json(const Json& j) {
    return QubitState(bloch_from_json(require_key(j, "r"), "\"r\""));
}

Json to_json(const NonidealChannel& channel) {
    return Json{
        {"f", Json::array({Json::array({channel.f(0, 0), channel.f(0, 1)}),
                           Json::array({channel.f(1, 0), channel.f(1, 1)})})},
        {"accuracy", accuracy(channel)},
        {"error", error_param(accuracy(channel))},
        {"orientation", channel.orientation()},
    };
}

Json to_json(const ConformityVerdict& verdict) {
    return Json{{"conforming", verdict.conforming},
                {"uninformative", verdict.uninformative},
                {"deviation", verdict.deviation}};
}

Json to_json(const TradeoffVerdict& verdict) {
    return Json{{"lhs", verdict.lhs},
                {"slack", verdict.slack},
                {"satisfied", verdict.satisfied}};
}

Json to_json(const ErrorProductVerdict& verdict) {
    return Json{{"product", verdict.product},
                {"bound", verdict.bound},
                {"satisfied", verdict.satisfied},
                {"trivial", verdict.trivial}};
}

Json to_json(const OutcomeCounts& counts) {
    Json records = Json::array();
    for (int k = 0; k < JointPovm::kElements; ++k) {
        records.push_back(
            {{"i", std::string(1, sign_char(JointPovm::outcome_a(k)))},
             {"j", std::string(1, sign_char(JointPovm::outcome_b(k)))},
             {"count", counts.counts()[static_cast<std::size_t>(k)]}});
    }
    return Json{{"n", counts.total()}, {"counts", std::move(records)}};
}

OutcomeCounts counts_from_json(const Json& j) {
    const Json& n_value = require_key(j, "n");
    if (!n_value.is_number_unsigned() && !n_value.is_number_integer()) {
        throw ParseError("\"n\" must be a nonnegative integer");
    }
    const Json& records = require_key(j, "counts");
    if (!records.is_array() || records.size() != 4) {
        throw ParseError("\"counts\" must be an array of four records");
    }
    std::array<std::uint64_t, 4> counts{};
    std::array<bool, 4> seen{};
    for (const auto& record : records) {
        const Sign i = sign_from_json(require_key(record, "i"), "outcome i");
        const Sign jj = sign_from_json(require_key(record, "j"), "outcome j");
        const int index = JointPovm::index(i, jj);
        if (seen[static_cast<std::size_t>(index)]) {
            throw ParseError("duplicate outcome pair in \"counts\"");
        }
        seen[static_cast<std::size_t>(index)] = true;
        const Json& count = require_key(record, "count");
        if (!count.is_number_unsigned() && !count.is_number_integer()) {
            throw ParseError("\"count\" must be a nonnegative integer");
        }
        if (count.is_number_integer() && count.get<std::int64_t>() < 0) {
            throw ParseError("\"count\" must be a nonnegative integer");
        }
        counts[static_cast<std::size_t>(index)] = count.get<std::uint64_t>();
    }
    return OutcomeCounts(n_value.get<std::uint64_t>(), counts);
}

Json to_json(const EstimationReport& report) {
    return Json{
        {"n", report.n},
        {"p_star_a", report.p_star_a},
        {"p_star_b", report.p_star_b},
        {"fisher_a", report.fisher_a},
        {"fisher_b", report.fisher_b},
        {"clipped_a", report.clipped_a},
        {"clipped_b", report.clipped_b},
    };
}

namespace {

Json to_json(const ObservableStats& stats) {
    if (!stats.assessed) {
        return Json{{"assessed", false}};
    }
    return Json{
        {"assessed", true},       {"true_p", stats.true_p},
        {"fisher", stats.fisher}, {"mean", stats.mean},
        {"variance", stats.variance},
        {"ratio", stats.ratio},   {"clipped_trials", stats.clipped_trials},
    };
}

} // namespace

Json to_json(const ExperimentReport& report) {
    return Json{
        {"n_per_trial", report.n_per_trial},
        {"trials", report.trials},
        {"a", to_json(report.a)},
        {"b", to_json(report.b)},
    };
}

Json to_json(const DisturbanceReport& report) {
    Json j{{"applicable", report.applicable}};
    if (report.applicable) {
        j["x_a"] = report.x_a;
        j["x_b"] = report.x_b;
        j["error_a"] = report.error_a;
        j["disturbance_b"] = report.disturbance_b;
        j["product"] = report.product;
        j["bound"] = report.bound;
        j["satisfied"] = report.satisfied;
    } else {
        j["b_deviation"] = report.b_deviation;
        j["bound"] = report.bound;
    }
    return j;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "theta,x_a_target,x_b_achieved,x_b_boundary,gap\n";
    for (const auto& point : result.points) {
        out << format_double(result.theta) << ','
            << format_double(point.x_a) << ',' << format_double(point.x_b)
            << ',' << format_double(point.x_b_boundary) << ','
            << format_double(point.gap) << '\n';
    }
    return out.str();
}

Json to_json(const SweepResult& result, bool include_witnesses) {
    Json points = Json::array();
    for (const auto& point : result.points) {
        Json entry{{"x_a_target", point.x_a},
                   {"x_b_achieved", point.x_b},
                   {"x_b_boundary", point.x_b_boundary},
                   {"gap", point.gap}};
        if (include_witnesses && point.achieved_by) {
            entry["achieved_by"] = to_json(*point.achieved_by);
        }
        points.push_back(std::move(entry));
    }
    return Json{{"theta", result.theta}, {"points", std::move(points)}};
}

} // namespace jointmeas
