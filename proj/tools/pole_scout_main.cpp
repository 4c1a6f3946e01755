// pole-scout: estimates the nearest singularity of a solution path from its
// truncated Taylor series and reproduces the extrapolation benchmarks.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polescout/experiments.hpp"

namespace {

using polescout::json;
namespace experiments = polescout::experiments;

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed config JSON: " + std::string(e.what()));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Taylor-series pole detection via extrapolated coefficient ratios"};
    app.require_subcommand(1);

    // sweep-monomial
    auto* sweep = app.add_subcommand(
        "sweep-monomial", "Exact rho check over the monomial family (1-t)^{p/q}");
    long long q_max = 20;
    std::string sweep_out;
    sweep->add_option("--q-max", q_max, "largest root degree q (runs p = 1..q-1 for q = 2..q-max)");
    sweep->add_option("--out", sweep_out, "write the JSON report to this path");

    // error-table
    auto* table = app.add_subcommand(
        "error-table", "Smallest extrapolation error per pole/degree cell, complex doubles");
    std::string poles_path, table_out, table_json_out, table_algorithm = "rho";
    std::vector<long long> degrees{8, 16, 32};
    bool all_algorithms = false;
    std::size_t table_ratio_start = 0;
    table->add_option("--poles", poles_path, "JSON file with an array of {re, im} pole objects");
    table->add_option("--degrees", degrees, "truncation degrees d (default 8,16,32)")
        ->delimiter(',');
    table->add_option("--algorithm", table_algorithm,
                      "richardson | aitken | rho | theta (default rho)");
    table->add_flag("--all-algorithms", all_algorithms, "tabulate all four algorithms");
    table->add_option("--ratio-start", table_ratio_start, "first ratio index n (default 0)");
    table->add_option("--out", table_out, "write the CSV table to this path");
    table->add_option("--json", table_json_out, "write the JSON report to this path");

    // pole-estimate
    auto* estimate = app.add_subcommand(
        "pole-estimate", "Nearest-pole estimate for a series supplied as a JSON file");
    std::string series_path, estimate_algorithm = "rho", estimate_out;
    std::size_t estimate_start = 0;
    estimate->add_option("--series", series_path, "coefficient file (series JSON format)")
        ->required();
    estimate->add_option("--algorithm", estimate_algorithm,
                         "richardson | aitken | rho | theta (default rho)");
    estimate->add_option("--start", estimate_start, "first ratio index n (default 0)");
    estimate->add_option("--out", estimate_out, "also write the estimate JSON to this path");

    // lemma-check
    auto* lemma = app.add_subcommand(
        "lemma-check", "Randomized exact identity checks and expansion-decay table");
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::vector<std::string> expansion_poles;
    std::string lemma_out;
    lemma->add_option("--trials", trials, "number of random identity trials (default 100)");
    lemma->add_option("--seed", seed, "RNG seed (default 42)");
    lemma->add_option("--expansion-poles", expansion_poles,
                      "poles for the decay table, rationals (default 10,20,40)")
        ->delimiter(',');
    lemma->add_option("--out", lemma_out, "write the JSON report to this path");

    // run --config
    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
    std::string config_path;
    run->add_option("--config", config_path, "config file: {\"command\": ..., \"parameters\": ...}")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help
        app.exit(e);
        return experiments::kExitBadInput;
    }

    try {
        json config;
        if (sweep->parsed()) {
            config["command"] = "sweep-monomial";
            config["parameters"]["q_max"] = q_max;
            if (!sweep_out.empty())
                config["parameters"]["out"] = sweep_out;
        } else if (table->parsed()) {
            config["command"] = "error-table";
            auto& params = config["parameters"];
            params["degrees"] = degrees;
            params["ratio_start"] = table_ratio_start;
            params["algorithm"] = table_algorithm;
            params["all_algorithms"] = all_algorithms;
            if (!poles_path.empty())
                params["poles"] = poles_path;
            if (!table_out.empty())
                params["out"] = table_out;
            if (!table_json_out.empty())
                params["json_out"] = table_json_out;
        } else if (estimate->parsed()) {
            config["command"] = "pole-estimate";
            auto& params = config["parameters"];
            params["series"] = series_path;
            params["algorithm"] = estimate_algorithm;
            params["ratio_start"] = estimate_start;
            if (!estimate_out.empty())
                params["out"] = estimate_out;
        } else if (lemma->parsed()) {
            config["command"] = "lemma-check";
            auto& params = config["parameters"];
            params["trials"] = trials;
            params["seed"] = seed;
            if (!expansion_poles.empty())
                params["expansion_poles"] = expansion_poles;
            if (!lemma_out.empty())
                params["out"] = lemma_out;
        } else {
            config = load_config_file(config_path);
        }
        return experiments::run_from_config(config, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "pole-scout: " << e.what() << "\n";
        return experiments::kExitBadInput;
    }
}
