#include "taintchain/bench.hpp"

#include <chrono>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "taintchain/rng.hpp"

namespace taintchain {

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::sequential: return "Sequential";
        case Mode::round_robin: return "RR";
        case Mode::connected_components: return "CC";
    }
    return "?";
}

static std::string type_label(Mode mode, size_t workers) {
    if (mode == Mode::sequential) return "Sequential";
    return "Concurrent(" + mode_name(mode) + "-" + std::to_string(workers) + ")";
}

Dataset generate_dataset(const DatasetSpec& spec) {
    if (spec.transactions >= 1 && spec.accounts < 2) {
        throw std::invalid_argument("at least 2 accounts are required to generate transfers");
    }

    u128 initial = spec.initial_balance;
    if (initial == 0) {
        // Millionaire preset: every account can fund all transfers combined.
        initial = spec.transfer_amount * u128(spec.transactions + 1) * 1000;
    }

    SplitMix64 rng(spec.seed);
    Dataset ds;
    ds.genesis.reserve(spec.accounts);
    for (uint64_t i = 0; i < spec.accounts; ++i) {
        AccountId id;
        for (int word = 0; word < 4; ++word) {
            uint64_t v = rng.next();
            for (int b = 0; b < 8; ++b) id[word * 8 + b] = uint8_t(v >> (8 * b));
        }
        ds.genesis.emplace_back(id, AccountBalance{initial, 0});
    }

    ds.queue.reserve(spec.transactions);
    for (uint64_t i = 0; i < spec.transactions; ++i) {
        uint64_t origin = rng.next_below(spec.accounts);
        uint64_t dest = rng.next_below(spec.accounts);
        while (dest == origin) dest = rng.next_below(spec.accounts);
        Transaction tx;
        tx.id = i;
        tx.origin = ds.genesis[origin].first;
        tx.call = Transfer{ds.genesis[dest].first, spec.transfer_amount};
        ds.queue.push_back(tx);
    }
    return ds;
}

void load_genesis(const Dataset& dataset, TaintableState& state) {
    for (const auto& [account, balance] : dataset.genesis) {
        state.unchecked_write(balance_key(account), balance.encode());
    }
}

RunResult run_benchmark(const DatasetSpec& spec, Mode mode, size_t workers, uint32_t latency_us,
                        Logger* log) {
    using clock = std::chrono::steady_clock;

    Dataset dataset = generate_dataset(spec);
    size_t effective_workers = (mode == Mode::sequential) ? 1 : workers;

    // Distribution strategy runs ahead of authoring as pre-processing; its
    // cost is not part of the measured authoring time.
    RoundRobinDistributor rr;
    ConnectedComponentsDistributor cc;
    const Distributor& distributor =
        (mode == Mode::connected_components) ? static_cast<const Distributor&>(cc) : rr;
    Assignment assignment = distributor.assign(dataset.queue, effective_workers);

    RunResult result;
    result.mode = mode;
    result.workers = effective_workers;
    result.members = spec.accounts;
    result.transactions = spec.transactions;

    Bytes encoded;
    {
        TaintableState state;
        load_genesis(dataset, state);
        state.set_latency_us(latency_us);

        auto t0 = clock::now();
        AuthorResult authored = author_block(dataset.queue, assignment, state, effective_workers,
                                             Digest{}, 1, log);
        auto t1 = clock::now();

        state.set_latency_us(0);
        result.stats = authored.stats;
        result.authoring_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        encoded = authored.block.encode();
    }

    {
        TaintableState state;
        load_genesis(dataset, state);
        state.set_latency_us(latency_us);

        // Validation is measured end to end, parsing included.
        auto t0 = clock::now();
        TaggedBlock block = TaggedBlock::decode(encoded);
        ValidationReport report = validate_block(block, state, log);
        auto t1 = clock::now();

        result.valid = report.valid;
        result.validation_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }

    double n = double(spec.transactions);
    if (result.authoring_ms > 0) result.authoring_tps = n / (result.authoring_ms / 1000.0);
    if (result.validation_ms > 0) result.validation_tps = n / (result.validation_ms / 1000.0);
    return result;
}

void emit_csv(const std::vector<RunResult>& results, std::ostream& out) {
    out << "type,members,transactions,authoring_ms,authoring_tps,validation_ms,validation_tps\n";
    for (const RunResult& r : results) {
        out << type_label(r.mode, r.workers) << ',' << r.members << ',' << r.transactions << ','
            << r.authoring_ms << ',' << r.authoring_tps << ',' << r.validation_ms << ','
            << r.validation_tps << '\n';
    }
}

void emit_json(const std::vector<RunResult>& results, std::ostream& out) {
    nlohmann::json doc = nlohmann::json::array();
    for (const RunResult& r : results) {
        nlohmann::json reports = nlohmann::json::array();
        for (const WorkerReport& w : r.stats.reports) {
            reports.push_back({{"worker", w.worker},
                               {"executed", w.executed},
                               {"forwarded_out", w.forwarded_out},
                               {"ok", w.ok},
                               {"logic_error", w.logic_error}});
        }
        doc.push_back({{"type", type_label(r.mode, r.workers)},
                       {"members", r.members},
                       {"transactions", r.transactions},
                       {"authoring_ms", r.authoring_ms},
                       {"authoring_tps", r.authoring_tps},
                       {"validation_ms", r.validation_ms},
                       {"validation_tps", r.validation_tps},
                       {"valid", r.valid},
                       {"stats",
                        {{"executed_in_place", r.stats.executed_in_place},
                         {"forwarded", r.stats.forwarded},
                         {"orphaned", r.stats.orphaned},
                         {"reports", reports}}}});
    }
    out << doc.dump(2) << '\n';
}

}  // namespace taintchain
