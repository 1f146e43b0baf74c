#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "taintchain/executor.hpp"
#include "taintchain/validator.hpp"

namespace taintchain {

enum class Mode { sequential, round_robin, connected_components };

std::string mode_name(Mode mode);

struct DatasetSpec {
    uint64_t accounts = 1000;
    uint64_t transactions = 250;
    u128 initial_balance = 0;  // 0 selects the millionaire preset
    u128 transfer_amount = 100;
    uint64_t seed = 42;
};

struct Dataset {
    std::vector<std::pair<AccountId, AccountBalance>> genesis;
    std::vector<Transaction> queue;
};

/// Deterministic dataset generation from a SplitMix64 stream: `accounts`
/// generated ids, each funded with the initial balance, and `transactions`
/// transfers of a fixed amount between two distinct uniformly drawn accounts.
/// With the millionaire preset the initial balance dwarfs the total transfer
/// volume, so every transfer succeeds.
Dataset generate_dataset(const DatasetSpec& spec);

/// Load the genesis balances into a state via unchecked writes.
void load_genesis(const Dataset& dataset, TaintableState& state);

struct RunResult {
    Mode mode = Mode::sequential;
    size_t workers = 1;
    uint64_t members = 0;
    uint64_t transactions = 0;
    double authoring_ms = 0;
    double authoring_tps = 0;
    double validation_ms = 0;
    double validation_tps = 0;
    AuthoringStats stats;
    bool valid = false;
};

/// One timed authoring + validation cycle over a fresh dataset. Distributor
/// pre-processing is excluded from the authoring time; validation time
/// includes parsing the encoded block. The produced block must validate.
RunResult run_benchmark(const DatasetSpec& spec, Mode mode, size_t workers, uint32_t latency_us,
                        Logger* log = nullptr);

/// Table-shaped CSV: type, members, transactions, authoring_ms,
/// authoring_tps, validation_ms, validation_tps.
void emit_csv(const std::vector<RunResult>& results, std::ostream& out);

void emit_json(const std::vector<RunResult>& results, std::ostream& out);

}  // namespace taintchain
