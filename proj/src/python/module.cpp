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

#include <array>
#include <complex>
#include <sstream>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jointmeas/cli.hpp"
#include "jointmeas/serialize.hpp"

namespace py = pybind11;
using namespace jointmeas;

namespace {

BlochVector vector_from_sequence(const py::sequence& seq) {
    if (py::len(seq) != 3) {
        throw py::type_error("expected a sequence of three numbers");
    }
    return {seq[0].cast<double>(), seq[1].cast<double>(),
            seq[2].cast<double>()};
}

std::array<std::array<std::complex<double>, 2>, 2> matrix_entries(
    const Mat2& m) {
    return {{{{m.m00, m.m01}}, {{m.m10, m.m11}}}};
}

std::string repr_vector(const BlochVector& v) {
    std::ostringstream out;
    out << "BlochVector(" << format_double(v.x) << ", " << format_double(v.y)
        << ", " << format_double(v.z) << ")";
    return out.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simultaneous-measurement toolkit for qubit POVMs: accuracy "
              "trade-offs, optimal joint measurements, and "
              "maximum-likelihood reconstruction.";

    py::register_exception<ValidationError>(m, "ValidationError",
                                            PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NonidealityError>(m, "NonidealityError",
                                             PyExc_ValueError);
    py::register_exception<FeasibilityError>(m, "FeasibilityError",
                                             PyExc_RuntimeError);
    py::register_exception<EstimationError>(m, "EstimationError",
                                            PyExc_RuntimeError);

    py::enum_<Sign>(m, "Sign")
        .value("PLUS", Sign::Plus)
        .value("MINUS", Sign::Minus);
    py::enum_<Observable>(m, "Observable")
        .value("A", Observable::A)
        .value("B", Observable::B);
    py::enum_<MarginalKind>(m, "MarginalKind")
        .value("PROJECTIVE", MarginalKind::Projective)
        .value("UNINFORMATIVE", MarginalKind::Uninformative)
        .value("INTERMEDIATE", MarginalKind::Intermediate);

    py::class_<BlochVector>(m, "BlochVector")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"),
             py::arg("z"))
        .def(py::init(&vector_from_sequence))
        .def_readonly("x", &BlochVector::x)
        .def_readonly("y", &BlochVector::y)
        .def_readonly("z", &BlochVector::z)
        .def("norm", &BlochVector::norm)
        .def("dot", &BlochVector::dot)
        .def("__repr__", &repr_vector);
    py::implicitly_convertible<py::sequence, BlochVector>();

    py::class_<QubitState>(m, "QubitState")
        .def(py::init<const BlochVector&>(), py::arg("r"))
        .def_static("maximally_mixed", &QubitState::maximally_mixed)
        .def_property_readonly("r", &QubitState::polarization);

    py::class_<ObservablePair>(m, "ObservablePair")
        .def(py::init<const BlochVector&, const BlochVector&>(),
             py::arg("n_a"), py::arg("n_b"))
        .def_property_readonly("n_a", &ObservablePair::n_a)
        .def_property_readonly("n_b", &ObservablePair::n_b)
        .def_property_readonly("theta", &ObservablePair::theta);

    py::class_<PovmElement>(m, "PovmElement")
        .def(py::init<double, const BlochVector&>(), py::arg("r"),
             py::arg("x"))
        .def_property_readonly("r", &PovmElement::r_coef)
        .def_property_readonly("x", &PovmElement::x)
        .def(
            "matrix",
            [](const PovmElement& e) { return matrix_entries(to_matrix(e)); },
            "Dense 2x2 complex form r*I + x.sigma");

    m.def("projector_element", &projector_element, py::arg("direction"),
          py::arg("sign"));

    py::class_<JointPovm>(m, "JointPovm")
        .def(py::init<std::array<PovmElement, 4>>(), py::arg("elements"),
             "Elements in the order (+,+), (+,-), (-,+), (-,-)")
        .def("element", &JointPovm::element, py::arg("i"), py::arg("j"))
        .def_property_readonly("elements", &JointPovm::elements)
        .def("marginal", &JointPovm::marginal, py::arg("which"))
        .def("to_json",
             [](const JointPovm& p) { return dump_json(to_json(p)); })
        .def_static("from_json", [](const std::string& text) {
            return povm_from_json(parse_json(text));
        });

    py::class_<NonidealChannel>(m, "NonidealChannel")
        .def_property_readonly(
            "f",
            [](const NonidealChannel& c) {
                return std::array<std::array<double, 2>, 2>{
                    {{{c.f(0, 0), c.f(0, 1)}}, {{c.f(1, 0), c.f(1, 1)}}}};
            })
        .def_property_readonly("orientation", &NonidealChannel::orientation)
        .def_property_readonly("r", &NonidealChannel::r_coef)
        .def_property_readonly("x_norm", &NonidealChannel::x_norm)
        .def("det", &NonidealChannel::det);

    py::class_<ConformityVerdict>(m, "ConformityVerdict")
        .def_readonly("conforming", &ConformityVerdict::conforming)
        .def_readonly("uninformative", &ConformityVerdict::uninformative)
        .def_readonly("deviation", &ConformityVerdict::deviation);
    py::class_<NonidealityReport>(m, "NonidealityReport")
        .def_readonly("a", &NonidealityReport::a)
        .def_readonly("b", &NonidealityReport::b);

    py::class_<AccuracyPair>(m, "AccuracyPair")
        .def(py::init<double, double, double>(), py::arg("x_a"),
             py::arg("x_b"), py::arg("theta"))
        .def_property_readonly("x_a", &AccuracyPair::x_a)
        .def_property_readonly("x_b", &AccuracyPair::x_b)
        .def_property_readonly("theta", &AccuracyPair::theta);

    py::class_<TradeoffVerdict>(m, "TradeoffVerdict")
        .def_readonly("lhs", &TradeoffVerdict::lhs)
        .def_readonly("slack", &TradeoffVerdict::slack)
        .def_readonly("satisfied", &TradeoffVerdict::satisfied);
    py::class_<ErrorProductVerdict>(m, "ErrorProductVerdict")
        .def_readonly("product", &ErrorProductVerdict::product)
        .def_readonly("bound", &ErrorProductVerdict::bound)
        .def_readonly("satisfied", &ErrorProductVerdict::satisfied)
        .def_readonly("trivial", &ErrorProductVerdict::trivial);

    py::class_<OutcomeCounts>(m, "OutcomeCounts")
        .def(py::init<std::uint64_t, std::array<std::uint64_t, 4>>(),
             py::arg("n"), py::arg("counts"))
        .def_property_readonly("n", &OutcomeCounts::total)
        .def_property_readonly("counts", &OutcomeCounts::counts)
        .def("count", &OutcomeCounts::count, py::arg("i"), py::arg("j"))
        .def("marginal_plus", &OutcomeCounts::marginal_plus)
        .def("marginal_minus", &OutcomeCounts::marginal_minus);

    py::class_<MleEstimate>(m, "MleEstimate")
        .def_readonly("p_star", &MleEstimate::p_star)
        .def_readonly("raw", &MleEstimate::raw)
        .def_readonly("clipped", &MleEstimate::clipped);

    py::class_<EstimationReport>(m, "EstimationReport")
        .def_readonly("n", &EstimationReport::n)
        .def_readonly("p_star_a", &EstimationReport::p_star_a)
        .def_readonly("p_star_b", &EstimationReport::p_star_b)
        .def_readonly("fisher_a", &EstimationReport::fisher_a)
        .def_readonly("fisher_b", &EstimationReport::fisher_b)
        .def_readonly("clipped_a", &EstimationReport::clipped_a)
        .def_readonly("clipped_b", &EstimationReport::clipped_b);

    py::class_<ObservableStats>(m, "ObservableStats")
        .def_readonly("assessed", &ObservableStats::assessed)
        .def_readonly("true_p", &ObservableStats::true_p)
        .def_readonly("fisher", &ObservableStats::fisher)
        .def_readonly("mean", &ObservableStats::mean)
        .def_readonly("variance", &ObservableStats::variance)
        .def_readonly("ratio", &ObservableStats::ratio)
        .def_readonly("clipped_trials", &ObservableStats::clipped_trials);
    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("n_per_trial", &ExperimentReport::n_per_trial)
        .def_readonly("trials", &ExperimentReport::trials)
        .def_readonly("a", &ExperimentReport::a)
        .def_readonly("b", &ExperimentReport::b);

    py::class_<SplitStrategy>(m, "SplitStrategy")
        .def_readonly("x_a", &SplitStrategy::x_a)
        .def_readonly("x_b", &SplitStrategy::x_b)
        .def_readonly("povm", &SplitStrategy::povm);

    py::class_<SqrtInstrument>(m, "SqrtInstrument")
        .def(py::init<double, const BlochVector&>(), py::arg("eta"),
             py::arg("axis"))
        .def_property_readonly("eta", &SqrtInstrument::eta)
        .def_property_readonly("axis", &SqrtInstrument::axis)
        .def_property_readonly("a", &SqrtInstrument::a)
        .def_property_readonly("b", &SqrtInstrument::b)
        .def("kraus", [](const SqrtInstrument& inst, Sign s) {
            return matrix_entries(inst.kraus(s));
        });

    py::class_<DisturbanceReport>(m, "DisturbanceReport")
        .def_readonly("applicable", &DisturbanceReport::applicable)
        .def_readonly("x_a", &DisturbanceReport::x_a)
        .def_readonly("x_b", &DisturbanceReport::x_b)
        .def_readonly("error_a", &DisturbanceReport::error_a)
        .def_readonly("disturbance_b", &DisturbanceReport::disturbance_b)
        .def_readonly("product", &DisturbanceReport::product)
        .def_readonly("bound", &DisturbanceReport::bound)
        .def_readonly("satisfied", &DisturbanceReport::satisfied)
        .def_readonly("b_deviation", &DisturbanceReport::b_deviation);

    py::class_<RegionPoint>(m, "RegionPoint")
        .def_readonly("x_a", &RegionPoint::x_a)
        .def_readonly("x_b", &RegionPoint::x_b)
        .def_readonly("x_b_boundary", &RegionPoint::x_b_boundary)
        .def_readonly("gap", &RegionPoint::gap)
        .def_readonly("achieved_by", &RegionPoint::achieved_by);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("theta", &SweepResult::theta)
        .def_readonly("points", &SweepResult::points);

    m.def("outcome_probability", &outcome_probability, py::arg("state"),
          py::arg("element"), "tr(rho E) in the Bloch representation");
    m.def("projector_probability", &projector_probability, py::arg("state"),
          py::arg("direction"), py::arg("sign"));
    m.def(
        "marginals",
        [](const JointPovm& povm) {
            const auto [a, b] = marginals(povm);
            return py::make_tuple(a, b);
        },
        py::arg("povm"), "Marginal '+' effects of both observables");

    m.def("check_nonideal", &check_nonideal, py::arg("povm"), py::arg("obs"));
    m.def("build_channel", &build_channel, py::arg("povm"), py::arg("obs"),
          py::arg("which"));
    m.def("channel_from_marginal", &channel_from_marginal,
          py::arg("marginal"), py::arg("axis"));
    m.def("accuracy", &accuracy, py::arg("channel"), "(det F)^2");
    m.def("error_param", &error_param, py::arg("accuracy"),
          "1/accuracy - 1; infinity at zero accuracy");
    m.def("classify_marginal", &classify_marginal, py::arg("channel"));
    m.def("tradeoff_check", &tradeoff_check, py::arg("pair"));
    m.def("error_product_check", &error_product_check, py::arg("pair"));

    m.def("optimal_povm", &optimal_povm, py::arg("obs"),
          "Joint POVM achieving the trade-off bound with X_A = X_B = "
          "1/(1+sin theta)");
    m.def("boundary_curve", &boundary_curve, py::arg("theta"), py::arg("x_a"));
    m.def(
        "sample_valid_povm",
        [](const ObservablePair& obs, std::uint64_t seed,
           std::optional<std::pair<double, double>> magnitudes,
           int max_retries) {
            return sample_valid_povm(obs, seed, magnitudes, max_retries);
        },
        py::arg("obs"), py::arg("seed"), py::arg("magnitudes") = py::none(),
        py::arg("max_retries") = 10000);
    m.def("frontier_max", &frontier_max, py::arg("obs"), py::arg("x_a"),
          py::arg("seed"), py::arg("restarts") = 16);
    m.def("region_sweep", &region_sweep, py::arg("obs"), py::arg("grid_size"),
          py::arg("seed"), py::arg("keep_witnesses") = false);

    m.def("simulate", &simulate, py::arg("povm"), py::arg("state"),
          py::arg("n"), py::arg("seed"));
    m.def("log_likelihood", &log_likelihood, py::arg("channel"),
          py::arg("n_plus"), py::arg("n_minus"), py::arg("p_plus"));
    m.def("mle_estimate", &mle_estimate, py::arg("channel"),
          py::arg("n_plus"), py::arg("n_minus"));
    m.def("fisher_information", &fisher_information, py::arg("channel"),
          py::arg("p_plus"));
    m.def("estimate_marginals", &estimate_marginals, py::arg("povm"),
          py::arg("obs"), py::arg("counts"));
    m.def("asymptotic_experiment", &asymptotic_experiment, py::arg("povm"),
          py::arg("obs"), py::arg("state"), py::arg("n_per_trial"),
          py::arg("trials"), py::arg("seed"),
          py::arg("on_trial") = TrialCallback{});
    m.def("split_strategy", &split_strategy, py::arg("obs"), py::arg("xi"));

    m.def("sequential_joint_povm", &sequential_joint_povm, py::arg("inst"),
          py::arg("obs"));
    m.def("disturbance_check", &disturbance_check, py::arg("inst"),
          py::arg("obs"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Invoke the command-line interface in-process; returns "
        "(exit_code, stdout, stderr)");
}
