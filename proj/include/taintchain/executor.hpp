#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "taintchain/block.hpp"
#include "taintchain/distributor.hpp"
#include "taintchain/logging.hpp"
#include "taintchain/runtime.hpp"
#include "taintchain/taint_state.hpp"

namespace taintchain {

// Messages exchanged between the master and the workers during authoring.

/// Worker -> worker: delegate a transaction whose first state access hit a
/// foreign taint to the owning worker. `seq` is the sender's send counter.
struct ForwardTx {
    Transaction tx;
    uint64_t seq;
};

/// Worker -> master: a transaction could not be executed at its current host
/// and must run in the sequential orphan phase. `after_forward` records
/// whether the transaction had already been forwarded once.
struct OrphanTx {
    Transaction tx;
    bool after_forward;
};

/// Worker -> master: a forwarded transaction was executed here. `seq` is the
/// executing worker's monotonically increasing execution counter, used to
/// order multiply-forwarded transactions within the tag.
struct ForwardExecuted {
    uint64_t tx_id;
    ThreadId by;
    uint64_t seq;
    bool logic_error;
};

/// Worker -> master, exactly once per worker: end-of-local-queue report.
struct AuthoringReport {
    uint64_t executed;
    uint64_t forwarded_out;
    uint64_t ok;
    uint64_t logic_error;
};

/// Master -> worker: shut down.
struct Terminate {};

struct Message {
    std::variant<ForwardTx, OrphanTx, ForwardExecuted, AuthoringReport, Terminate> payload;
    ThreadId from;
};

struct WorkerReport {
    ThreadId worker = 0;
    uint64_t executed = 0;
    uint64_t forwarded_out = 0;
    uint64_t ok = 0;
    uint64_t logic_error = 0;
};

struct AuthoringStats {
    uint64_t executed_in_place = 0;  // sum of the worker reports' executed counts
    uint64_t forwarded = 0;          // forwarded and executed at the recipient
    uint64_t orphaned = 0;
    std::vector<WorkerReport> reports;

    uint64_t total() const { return executed_in_place + forwarded + orphaned; }
};

/// Termination rule for the master's collection phase: once all worker
/// reports are in, the run is complete iff the locally executed counts plus
/// forwarded-executed events plus orphans cover the whole queue.
bool detect_termination(const std::vector<WorkerReport>& reports, size_t expected_reports,
                        uint64_t forwarded, uint64_t orphaned, uint64_t queue_size);

/// Per-transaction outcome of authoring, consumed by block assembly.
struct FinalPlacement {
    enum class Kind { in_place, forward_executed, orphaned } kind = Kind::in_place;
    ThreadId tag = 0;       // final worker tag (in_place / forward_executed)
    uint64_t seq = 0;       // execution order key for forward_executed
    uint64_t orphan_pos = 0;  // arrival order for orphans
};

/// Deterministic block-body ordering: per worker tag in ascending id, the
/// in-place transactions in queue order followed by the forward-executed ones
/// in per-worker execution order, then the orphans in master execution order.
std::vector<TaggedTransaction> assemble_body(const std::vector<Transaction>& queue,
                                             const Assignment& assignment,
                                             const std::vector<FinalPlacement>& placement,
                                             size_t workers);

struct MalformedBlockError : std::runtime_error {
    explicit MalformedBlockError(const std::string& what) : std::runtime_error(what) {}
};

struct EngineError : std::runtime_error {
    explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

struct AuthorResult {
    TaggedBlock block;
    AuthoringStats stats;
};

/// Run the master/worker authoring protocol over the queue: distribute per
/// the assignment, execute concurrently with forwarding and orphan
/// collection, detect termination, run the orphan phase sequentially, and
/// assemble the tagged block. Taints must be cleared on entry.
AuthorResult author_block(const std::vector<Transaction>& queue, const Assignment& assignment,
                          TaintableState& state, size_t workers, const Digest& parent,
                          uint64_t number, Logger* log = nullptr);

}  // namespace taintchain
