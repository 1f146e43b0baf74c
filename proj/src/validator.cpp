#include "taintchain/validator.hpp"

#include <atomic>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

namespace taintchain {

ValidationReport validate_block(const TaggedBlock& block, TaintableState& state, Logger* log) {
    auto start = std::chrono::steady_clock::now();

    // Group transactions by tag, preserving block order within each tag.
    std::map<uint8_t, std::vector<const Transaction*>> by_tag;
    for (const TaggedTransaction& tt : block.body) by_tag[tt.tag.raw].push_back(&tt.tx);

    // One thread per distinct worker tag; taints stay active so the execution
    // semantics are identical to authoring. On an honest block no conflict
    // can occur, so any conflict is a malformed block.
    std::atomic<bool> conflict{false};
    state.set_workers_active(true);
    std::vector<std::thread> threads;
    for (const auto& [tag, txs] : by_tag) {
        if (tag == kOrphanTag) continue;
        threads.emplace_back([&, tag = tag, txs = &txs] {
            for (const Transaction* tx : *txs) {
                DispatchOutcome outcome = dispatch(*tx, state, ThreadId(tag));
                if (as_conflict(outcome)) {
                    conflict.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (std::thread& t : threads) t.join();
    state.set_workers_active(false);
    if (conflict.load()) {
        throw MalformedBlockError("cross-tag taint conflict during validation");
    }

    // Orphans run sequentially after all tag threads are done.
    auto orphan_it = by_tag.find(kOrphanTag);
    if (orphan_it != by_tag.end()) {
        for (const Transaction* tx : orphan_it->second) apply_unchecked(*tx, state);
    }

    ValidationReport report;
    report.computed_root = state.state_root();
    report.valid = report.computed_root == block.header.state_root;
    report.elapsed = std::chrono::steady_clock::now() - start;

    if (log) {
        std::ostringstream os;
        os << "[Validator] - Re-executed " << block.body.size() << " transactions across "
           << threads.size() << " tag threads; state root "
           << (report.valid ? "matches" : "MISMATCH");
        log->debug(os.str());
    }
    return report;
}

}  // namespace taintchain
