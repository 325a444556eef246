// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irshare/config.hpp"
#include "irshare/harness.hpp"

namespace {

using namespace irshare;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitBadInput = 2;

std::set<std::string> parse_emit(const std::string& emit) {
    std::set<std::string> out;
    std::stringstream ss(emit);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token != "csv" && token != "json" && token != "plot")
            throw std::invalid_argument("--emit accepts csv, json, plot; got \"" + token + "\"");
        out.insert(token);
    }
    if (out.empty()) throw std::invalid_argument("--emit needs at least one format");
    return out;
}

std::vector<long long> parse_values(const std::string& csv) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size())
            throw std::invalid_argument("--values entry \"" + token + "\" is not an integer");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("--values needs at least one entry");
    return out;
}

void write_outputs(const std::vector<SweepRecord>& records, const std::string& csv_path,
                   const std::set<std::string>& emit) {
    namespace fs = std::filesystem;
    if (emit.count("csv")) {
        write_file(csv_path, records_to_csv(records));
        std::cout << "wrote " << csv_path << "\n";
    }
    if (emit.count("json")) {
        const std::string p = fs::path(csv_path).replace_extension(".json").string();
        write_file(p, records_to_json(records));
        std::cout << "wrote " << p << "\n";
    }
    if (emit.count("plot")) {
        const std::string p = fs::path(csv_path).replace_extension(".svg").string();
        write_file(p, records_to_svg(records));
        std::cout << "wrote " << p << "\n";
    }
}

struct RunArgs {
    std::string config_path;
    std::string scheme;
    int drops = 100;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string out_path;
    std::string emit = "csv,json";
    std::string dump_path;
    std::string trace_path;
};

int do_run(const RunArgs& args) {
    Config cfg = args.config_path.empty() ? Config{} : load_config(args.config_path);
    if (args.seed_set) cfg.scenario.seed = args.seed;
    const uint64_t seed = cfg.scenario.seed;

    SweepRecord rec;
    if (args.dump_path.empty() && args.trace_path.empty()) {
        rec = monte_carlo(cfg.scenario, args.scheme, args.drops, seed, cfg.optimizer);
    } else {
        // Serial pass that keeps per-drop artifacts in drop order.
        std::vector<DropResult> drops;
        drops.reserve(static_cast<size_t>(args.drops));
        std::ostringstream trace;
        trace << "drop,restart,iter,min_rate,argmin_user,step\n";
        std::vector<double> mins;
        for (int i = 0; i < args.drops; ++i) {
            const IterationObserver observer = [&trace, i](const IterationRecord& it,
                                                           const PhasePlan&) {
                trace << i << ',' << it.restart << ',' << it.iter << ','
                      << format_double(it.min_rate) << ',' << it.argmin_user << ','
                      << format_double(it.step) << "\n";
            };
            drops.push_back(run_drop(cfg.scenario, args.scheme, cfg.optimizer, i, seed,
                                     args.trace_path.empty() ? nullptr : observer));
            mins.push_back(drops.back().scheme.min_rate);
        }
        rec = summarize(cfg.scenario, args.scheme, seed, mins);
        if (!args.dump_path.empty()) {
            write_file(args.dump_path, dump_channels_text(drops));
            std::cout << "wrote " << args.dump_path << "\n";
        }
        if (!args.trace_path.empty()) {
            write_file(args.trace_path, trace.str());
            std::cout << "wrote " << args.trace_path << "\n";
        }
    }

    const std::vector<SweepRecord> records{rec};
    if (args.out_path.empty()) {
        std::cout << records_to_csv(records);
    } else {
        write_outputs(records, args.out_path, parse_emit(args.emit));
    }
    return kExitOk;
}

struct SweepArgs {
    std::string axis;
    std::string values;
    std::string config_path;
    std::string out_dir;
    int drops = 100;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string emit = "csv,json";
};

int do_sweep(const SweepArgs& args) {
    Config cfg = args.config_path.empty() ? Config{} : load_config(args.config_path);
    if (args.seed_set) cfg.scenario.seed = args.seed;
    const std::vector<long long> values = parse_values(args.values);

    std::vector<SweepRecord> records;
    if (args.axis == "elements")
        records = sweep_elements(cfg.scenario, values, args.drops, cfg.optimizer);
    else if (args.axis == "mnos")
        records = sweep_mnos(cfg.scenario, values, args.drops, cfg.optimizer);
    else
        throw std::invalid_argument("--axis must be elements or mnos");

    std::filesystem::create_directories(args.out_dir);
    const std::string base =
        (std::filesystem::path(args.out_dir) / ("sweep_" + args.axis)).string();
    write_outputs(records, base + ".csv", parse_emit(args.emit));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator for reflecting-surface sharing among mobile operators.\n"
                 "Parallel drop evaluation honors the IRSHARE_WORKERS environment variable."};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "evaluate one scheme at a fixed scenario");
    run->add_option("--config", run_args.config_path, "JSON configuration file");
    run->add_option("--scheme", run_args.scheme, "one of: sharing, time-division, no-sharing, random, standalone-switching")
        ->required();
    run->add_option("--drops", run_args.drops, "Monte Carlo drops")->default_val(100);
    CLI::Option* run_seed = run->add_option("--seed", run_args.seed, "overrides the config seed");
    run->add_option("--out", run_args.out_path, "output CSV path (stdout when omitted)");
    run->add_option("--emit", run_args.emit, "comma list of csv,json,plot")->default_val("csv,json");
    run->add_option("--dump-channels", run_args.dump_path,
                    "write per-drop user positions and channel coefficients (forces serial drops)");
    run->add_option("--trace", run_args.trace_path,
                    "write per-iteration optimizer trace CSV (forces serial drops)");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over elements or MNOs");
    sweep->add_option("--axis", sweep_args.axis, "elements or mnos")->required();
    sweep->add_option("--values", sweep_args.values, "comma list of axis values")->required();
    sweep->add_option("--config", sweep_args.config_path, "JSON configuration file");
    sweep->add_option("--out", sweep_args.out_dir, "output directory")->required();
    sweep->add_option("--drops", sweep_args.drops, "Monte Carlo drops per point")->default_val(100);
    CLI::Option* sweep_seed =
        sweep->add_option("--seed", sweep_args.seed, "overrides the config seed");
    sweep->add_option("--emit", sweep_args.emit, "comma list of csv,json,plot")
        ->default_val("csv,json");

    uint64_t check_seed = 1;
    bool perturb = false;
    OptimizerOptions oracle_opts;
    CLI::App* check = app.add_subcommand("check", "built-in validation suites");
    check->require_subcommand(1);
    CLI::App* grad = check->add_subcommand("grad", "analytic ascent direction vs central finite differences");
    grad->add_option("--seed", check_seed, "instance seed")->default_val(1);
    grad->add_flag("--perturb", perturb, "negative control: corrupt one gradient entry by 1%");
    CLI::App* oracle = check->add_subcommand("oracle", "optimizer vs exhaustive quantized search");
    oracle->add_option("--seed", check_seed, "instance seed")->default_val(1);
    oracle->add_option("--max-iters", oracle_opts.max_iters, "optimizer iteration cap")
        ->default_val(oracle_opts.max_iters);
    oracle->add_option("--restarts", oracle_opts.restarts, "optimizer restarts")
        ->default_val(oracle_opts.restarts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (run->parsed()) {
            run_args.seed_set = run_seed->count() > 0;
            return do_run(run_args);
        }
        if (sweep->parsed()) {
            sweep_args.seed_set = sweep_seed->count() > 0;
            return do_sweep(sweep_args);
        }
        if (grad->parsed()) {
            const CheckReport rep = check_gradient(check_seed, perturb ? 0.01 : 0.0);
            std::cout << rep.text;
            return rep.pass ? kExitOk : kExitValidationFailure;
        }
        if (oracle->parsed()) {
            const CheckReport rep = check_oracle(check_seed, oracle_opts);
            std::cout << rep.text;
            return rep.pass ? kExitOk : kExitValidationFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
