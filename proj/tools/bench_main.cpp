#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "taintchain/bench.hpp"

using namespace taintchain;

int main(int argc, char** argv) {
    CLI::App app{"Concurrent block authoring/validation benchmark"};

    uint64_t accounts = 1000;
    uint64_t transactions = 250;
    size_t workers = 4;
    std::string distributor = "cc";
    uint64_t seed = 42;
    uint32_t latency_us = 1900;
    uint64_t initial_balance = 0;
    uint64_t amount = 100;
    std::string format = "csv";
    std::string out_path;
    std::string log_level = "info";

    app.add_option("--accounts", accounts, "Number of accounts in the genesis state");
    app.add_option("--transactions", transactions, "Number of generated transfers");
    app.add_option("--workers", workers, "Worker thread count")->check(CLI::Range(1, 255));
    app.add_option("--distributor", distributor, "Distribution strategy")
        ->check(CLI::IsMember({"seq", "rr", "cc"}));
    app.add_option("--seed", seed, "Dataset PRNG seed");
    app.add_option("--latency-us", latency_us, "Artificial per-access state latency (us)");
    app.add_option("--initial-balance", initial_balance,
                   "Initial balance per account (0 = millionaire preset)");
    app.add_option("--amount", amount, "Transfer amount");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Write the report to this path instead of stdout");
    app.add_option("--log-level", log_level, "Engine log verbosity")
        ->check(CLI::IsMember({"silent", "info", "debug"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Mode mode = Mode::connected_components;
    if (distributor == "seq") mode = Mode::sequential;
    else if (distributor == "rr") mode = Mode::round_robin;

    LogLevel level = LogLevel::info;
    if (log_level == "silent") level = LogLevel::silent;
    else if (log_level == "debug") level = LogLevel::debug;
    Logger log(level);

    DatasetSpec spec;
    spec.accounts = accounts;
    spec.transactions = transactions;
    spec.initial_balance = initial_balance;
    spec.transfer_amount = amount;
    spec.seed = seed;

    std::vector<RunResult> results;
    try {
        results.push_back(run_benchmark(spec, mode, workers, latency_us, &log));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    if (!results.back().valid) {
        std::cerr << "error: authored block failed validation (state root mismatch)\n";
        return 2;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << " for writing\n";
            return 1;
        }
        out = &file;
    }

    if (format == "json") emit_json(results, *out);
    else emit_csv(results, *out);
    if (out == &file && !file.good()) {
        std::cerr << "error: failed writing report to " << out_path << '\n';
        return 1;
    }
    return 0;
}
