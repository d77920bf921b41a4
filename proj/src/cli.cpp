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

#include "jointmeas/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "jointmeas/serialize.hpp"

namespace jointmeas {

namespace {

// Exit codes, kept stable for scripting.
constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kInputError = 2;

struct Options {
    std::string povm_path;
    std::string obs_path;
    std::string state_path;
    std::string counts_path;
    std::string out_path;
    std::string per_trial_path;
    std::string format = "csv";
    double theta = 0.0;
    double x_a = 0.0;
    double x_b = 0.0;
    double eta = 0.0;
    double xi = 0.0;
    bool degrees = false;
    bool witness = false;
    int grid = 41;
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

double effective_theta(const Options& opt) {
    return opt.degrees ? opt.theta * M_PI / 180.0 : opt.theta;
}

// Canonical axes for commands that take only an angle: n_a along z and
// n_b in the x-z plane.
ObservablePair observables_from_theta(double theta) {
    if (!std::isfinite(theta) || theta <= 0.0 || theta >= M_PI) {
        throw ValidationError("theta must lie strictly between 0 and pi");
    }
    return ObservablePair({0.0, 0.0, 1.0},
                          {std::sin(theta), 0.0, std::cos(theta)});
}

ObservablePair load_observables(const Options& opt, const CLI::App* cmd) {
    if (cmd->count("--obs") > 0) {
        return observables_from_json(load_json_file(opt.obs_path));
    }
    if (cmd->count("--theta") > 0) {
        return observables_from_theta(effective_theta(opt));
    }
    throw ParseError("either --obs or --theta is required");
}

void write_output(const std::string& text, const Options& opt,
                  std::ostream& out) {
    if (opt.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opt.out_path);
    if (!file) {
        throw ParseError("cannot open output file: " + opt.out_path);
    }
    file << text;
}

int cmd_validate(const Options& opt, std::ostream& out) {
    const JointPovm povm = povm_from_json(load_json_file(opt.povm_path));
    const ObservablePair obs =
        observables_from_json(load_json_file(opt.obs_path));
    const NonidealityReport report = check_nonideal(povm, obs);
    Json j{{"valid", true},
           {"a", to_json(report.a)},
           {"b", to_json(report.b)}};
    write_output(dump_json(j), opt, out);
    return report.a.conforming && report.b.conforming ? kOk : kDomainError;
}

int cmd_accuracy(const Options& opt, std::ostream& out) {
    const JointPovm povm = povm_from_json(load_json_file(opt.povm_path));
    const ObservablePair obs =
        observables_from_json(load_json_file(opt.obs_path));
    Json j{{"theta", obs.theta()},
           {"a", to_json(build_channel(povm, obs, Observable::A))},
           {"b", to_json(build_channel(povm, obs, Observable::B))}};
    write_output(dump_json(j), opt, out);
    return kOk;
}

int cmd_tradeoff(const Options& opt, const CLI::App* cmd, std::ostream& out) {
    std::optional<AccuracyPair> pair;
    if (cmd->count("--povm") > 0) {
        const JointPovm povm = povm_from_json(load_json_file(opt.povm_path));
        const ObservablePair obs =
            observables_from_json(load_json_file(opt.obs_path));
        pair.emplace(accuracy(build_channel(povm, obs, Observable::A)),
                     accuracy(build_channel(povm, obs, Observable::B)),
                     obs.theta());
    } else {
        if (cmd->count("--xa") == 0 || cmd->count("--xb") == 0 ||
            cmd->count("--theta") == 0) {
            throw ParseError(
                "either --povm/--obs or --xa/--xb/--theta is required");
        }
        pair.emplace(opt.x_a, opt.x_b, effective_theta(opt));
    }
    Json j{{"theta", pair->theta()},
           {"x_a", pair->x_a()},
           {"x_b", pair->x_b()},
           {"tradeoff", to_json(tradeoff_check(*pair))},
           {"error_product", to_json(error_product_check(*pair))}};
    write_output(dump_json(j), opt, out);
    return kOk;
}

int cmd_optimal(const Options& opt, const CLI::App* cmd, std::ostream& out) {
    const ObservablePair obs = load_observables(opt, cmd);
    const JointPovm povm = optimal_povm(obs);
    Json j{{"theta", obs.theta()},
           {"x_a", accuracy(build_channel(povm, obs, Observable::A))},
           {"x_b", accuracy(build_channel(povm, obs, Observable::B))},
           {"povm", to_json(povm)}};
    write_output(dump_json(j), opt, out);
    return kOk;
}

int cmd_sweep(const Options& opt, const CLI::App* cmd, std::ostream& out) {
    const ObservablePair obs = load_observables(opt, cmd);
    const SweepResult result =
        region_sweep(obs, opt.grid, opt.seed, opt.witness);
    if (opt.format == "json") {
        write_output(dump_json(to_json(result, opt.witness)), opt, out);
    } else {
        write_output(sweep_to_csv(result), opt, out);
    }
    return kOk;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
    const JointPovm povm = povm_from_json(load_json_file(opt.povm_path));
    const QubitState state = state_from_json(load_json_file(opt.state_path));
    const OutcomeCounts counts = simulate(povm, state, opt.n, opt.seed);
    write_output(dump_json(to_json(counts)), opt, out);
    return kOk;
}

int cmd_estimate(const Options& opt, const CLI::App* cmd, std::ostream& out) {
    const JointPovm povm = povm_from_json(load_json_file(opt.povm_path));
    const ObservablePair obs =
        observables_from_json(load_json_file(opt.obs_path));
    std::optional<OutcomeCounts> counts;
    if (cmd->count("--counts") > 0) {
        counts = counts_from_json(load_json_file(opt.counts_path));
    } else {
        if (cmd->count("--state") == 0 || cmd->count("--n") == 0 ||
            cmd->count("--seed") == 0) {
            throw ParseError(
                "either --counts or --state/--n/--seed is required");
        }
        const QubitState state =
            state_from_json(load_json_file(opt.state_path));
        counts = simulate(povm, state, opt.n, opt.seed);
    }
    const EstimationReport report = estimate_marginals(povm, obs, *counts);
    Json j = to_json(report);
    j["counts"] = to_json(*counts);
    write_output(dump_json(j), opt, out);
    return kOk;
}

int cmd_experiment(const Options& opt, std::ostream& out) {
    const JointPovm povm = povm_from_json(load_json_file(opt.povm_path));
    const ObservablePair obs =
        observables_from_json(load_json_file(opt.obs_path));
    const QubitState state = state_from_json(load_json_file(opt.state_path));

    std::ofstream trace;
    TrialCallback on_trial;
    if (!opt.per_trial_path.empty()) {
        trace.open(opt.per_trial_path);
        if (!trace) {
            throw ParseError("cannot open output file: " +
                             opt.per_trial_path);
        }
        trace << "trial,p_star_a,p_star_b\n";
        on_trial = [&trace](std::uint64_t trial, double p_a, double p_b) {
            trace << trial << ',' << format_double(p_a) << ','
                  << format_double(p_b) << '\n';
        };
    }
    const ExperimentReport report = asymptotic_experiment(
        povm, obs, state, opt.n, opt.trials, opt.seed, on_trial);
    write_output(dump_json(to_json(report)), opt, out);
    return kOk;
}

int cmd_sequential(const Options& opt, const CLI::App* cmd,
                   std::ostream& out) {
    const ObservablePair obs = load_observables(opt, cmd);
    const SqrtInstrument inst(opt.eta, obs.n_a());
    const DisturbanceReport report = disturbance_check(inst, obs);
    Json j{{"eta", opt.eta}, {"theta", obs.theta()}};
    j.update(to_json(report));
    j["povm"] = to_json(sequential_joint_povm(inst, obs));
    write_output(dump_json(j), opt, out);
    return kOk;
}

int cmd_split(const Options& opt, const CLI::App* cmd, std::ostream& out) {
    const ObservablePair obs = load_observables(opt, cmd);
    const SplitStrategy split = split_strategy(obs, opt.xi);
    Json j{{"xi", opt.xi},
           {"theta", obs.theta()},
           {"x_a", split.x_a},
           {"x_b", split.x_b},
           {"sum", split.x_a + split.x_b},
           {"povm", to_json(split.povm)}};
    write_output(dump_json(j), opt, out);
    return kOk;
}

void add_common_output(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out_path, "Write the result to a file");
}

void add_theta(CLI::App* cmd, Options& opt) {
    cmd->add_option("--theta", opt.theta, "Angle between the two axes");
    cmd->add_flag("--degrees", opt.degrees,
                  "Interpret --theta in degrees instead of radians");
}

void add_obs_or_theta(CLI::App* cmd, Options& opt) {
    cmd->add_option("--obs", opt.obs_path, "Observable-pair JSON file");
    add_theta(cmd, opt);
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Simultaneous-measurement toolkit for qubit POVMs"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* validate =
        app.add_subcommand("validate",
                           "Check POVM invariants and nonideality of both "
                           "marginals");
    validate->add_option("--povm", opt.povm_path, "Joint-POVM JSON file")
        ->required();
    validate->add_option("--obs", opt.obs_path, "Observable-pair JSON file")
        ->required();
    add_common_output(validate, opt);

    CLI::App* acc = app.add_subcommand(
        "accuracy", "Transition matrices and accuracies of both marginals");
    acc->add_option("--povm", opt.povm_path, "Joint-POVM JSON file")
        ->required();
    acc->add_option("--obs", opt.obs_path, "Observable-pair JSON file")
        ->required();
    add_common_output(acc, opt);

    CLI::App* tradeoff = app.add_subcommand(
        "tradeoff", "Evaluate both forms of the accuracy trade-off bound");
    tradeoff->add_option("--povm", opt.povm_path, "Joint-POVM JSON file");
    tradeoff->add_option("--obs", opt.obs_path, "Observable-pair JSON file");
    tradeoff->add_option("--xa", opt.x_a, "Accuracy of the A marginal");
    tradeoff->add_option("--xb", opt.x_b, "Accuracy of the B marginal");
    add_theta(tradeoff, opt);
    add_common_output(tradeoff, opt);

    CLI::App* optimal = app.add_subcommand(
        "optimal", "Equality-achieving joint POVM for a pair of axes");
    add_obs_or_theta(optimal, opt);
    add_common_output(optimal, opt);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Map the accessible accuracy region against the bound");
    add_obs_or_theta(sweep, opt);
    sweep->add_option("--grid", opt.grid, "Grid points over x_a in [0, 1]")
        ->check(CLI::Range(2, 100000));
    sweep->add_option("--seed", opt.seed, "Master seed")->required();
    sweep->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--witness", opt.witness,
                    "Include witness POVMs (JSON format only)");
    add_common_output(sweep, opt);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Draw outcome counts for a POVM on a state");
    simulate->add_option("--povm", opt.povm_path, "Joint-POVM JSON file")
        ->required();
    simulate->add_option("--state", opt.state_path, "State JSON file")
        ->required();
    simulate->add_option("--n", opt.n, "Number of samples")->required();
    simulate->add_option("--seed", opt.seed, "Master seed")->required();
    add_common_output(simulate, opt);

    CLI::App* estimate = app.add_subcommand(
        "estimate",
        "Maximum-likelihood reconstruction of both observables");
    estimate->add_option("--povm", opt.povm_path, "Joint-POVM JSON file")
        ->required();
    estimate->add_option("--obs", opt.obs_path, "Observable-pair JSON file")
        ->required();
    estimate->add_option("--counts", opt.counts_path, "Counts JSON file");
    estimate->add_option("--state", opt.state_path, "State JSON file");
    estimate->add_option("--n", opt.n, "Number of samples");
    estimate->add_option("--seed", opt.seed, "Master seed");
    add_common_output(estimate, opt);

    CLI::App* experiment = app.add_subcommand(
        "experiment",
        "Monte Carlo check of estimator variance against the Fisher "
        "prediction");
    experiment->add_option("--povm", opt.povm_path, "Joint-POVM JSON file")
        ->required();
    experiment->add_option("--obs", opt.obs_path, "Observable-pair JSON file")
        ->required();
    experiment->add_option("--state", opt.state_path, "State JSON file")
        ->required();
    experiment->add_option("--n", opt.n, "Samples per trial")->required();
    experiment->add_option("--trials", opt.trials, "Number of trials")
        ->required();
    experiment->add_option("--seed", opt.seed, "Master seed")->required();
    experiment->add_option("--per-trial", opt.per_trial_path,
                           "Stream per-trial estimates to a CSV file");
    add_common_output(experiment, opt);

    CLI::App* sequential = app.add_subcommand(
        "sequential",
        "Unsharp measurement of A followed by projective B, as a joint "
        "POVM");
    sequential->add_option("--eta", opt.eta, "Sharpness of the A measurement")
        ->required();
    add_obs_or_theta(sequential, opt);
    add_common_output(sequential, opt);

    CLI::App* split = app.add_subcommand(
        "split", "Sample-splitting baseline accuracies");
    split->add_option("--xi", opt.xi, "Fraction of samples measuring A")
        ->required();
    add_obs_or_theta(split, opt);
    add_common_output(split, opt);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(opt, out);
        }
        if (acc->parsed()) {
            return cmd_accuracy(opt, out);
        }
        if (tradeoff->parsed()) {
            return cmd_tradeoff(opt, tradeoff, out);
        }
        if (optimal->parsed()) {
            return cmd_optimal(opt, optimal, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(opt, sweep, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(opt, out);
        }
        if (estimate->parsed()) {
            return cmd_estimate(opt, estimate, out);
        }
        if (experiment->parsed()) {
            return cmd_experiment(opt, out);
        }
        if (sequential->parsed()) {
            return cmd_sequential(opt, sequential, out);
        }
        if (split->parsed()) {
            return cmd_split(opt, split, out);
        }
        err << "error: no subcommand given\n";
        return kInputError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int k = 1; k < argc; ++k) {
        args.emplace_back(argv[k]);
    }
    return run_cli(std::move(args), std::cout, std::cerr);
}

} // namespace jointmeas
