#include "taintchain/executor.hpp"

#include <algorithm>

#include "taintchain/channel.hpp"
#include <cassert>
#include <memory>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace taintchain {

bool detect_termination(const std::vector<WorkerReport>& reports, size_t expected_reports,
                        uint64_t forwarded, uint64_t orphaned, uint64_t queue_size) {
    if (reports.size() < expected_reports) return false;
    uint64_t locally_executed = 0;
    for (const WorkerReport& r : reports) locally_executed += r.executed;
    return locally_executed + forwarded + orphaned == queue_size;
}

std::vector<TaggedTransaction> assemble_body(const std::vector<Transaction>& queue,
                                             const Assignment& assignment,
                                             const std::vector<FinalPlacement>& placement,
                                             size_t workers) {
    if (placement.size() != queue.size() || assignment.size() != queue.size()) {
        throw EngineError("placement/assignment does not cover the queue");
    }

    std::vector<TaggedTransaction> body;
    body.reserve(queue.size());

    for (size_t w = 0; w < workers; ++w) {
        // In-place transactions keep their queue-relative order within the tag.
        for (size_t i = 0; i < queue.size(); ++i) {
            if (placement[i].kind == FinalPlacement::Kind::in_place &&
                assignment.worker_of[i] == ThreadId(w)) {
                body.push_back({Tag::worker(ThreadId(w)), queue[i]});
            }
        }
        // Forward-executed transactions follow, in the order the hosting
        // worker actually executed them.
        std::vector<size_t> fwd;
        for (size_t i = 0; i < queue.size(); ++i) {
            if (placement[i].kind == FinalPlacement::Kind::forward_executed &&
                placement[i].tag == ThreadId(w)) {
                fwd.push_back(i);
            }
        }
        std::sort(fwd.begin(), fwd.end(),
                  [&](size_t a, size_t b) { return placement[a].seq < placement[b].seq; });
        for (size_t i : fwd) body.push_back({Tag::worker(ThreadId(w)), queue[i]});
    }

    // Orphans last, in the master's execution order.
    std::vector<size_t> orphans;
    for (size_t i = 0; i < queue.size(); ++i) {
        if (placement[i].kind == FinalPlacement::Kind::orphaned) orphans.push_back(i);
    }
    std::sort(orphans.begin(), orphans.end(),
              [&](size_t a, size_t b) { return placement[a].orphan_pos < placement[b].orphan_pos; });
    for (size_t i : orphans) body.push_back({Tag::orphan(), queue[i]});

    if (body.size() != queue.size()) throw EngineError("assembled body does not cover the queue");
    return body;
}

namespace {

struct WorkerContext {
    ThreadId me;
    std::vector<Transaction> local_queue;
    TaintableState* state;
    std::vector<Channel<Message>*> worker_inboxes;
    Channel<Message>* master_inbox;
    Logger* log;
};

void worker_main(WorkerContext ctx) {
    uint64_t executed = 0, forwarded_out = 0, ok = 0, logic_error = 0;
    uint64_t send_seq = 0;

    // Deplete the local queue in order.
    for (Transaction& tx : ctx.local_queue) {
        DispatchOutcome outcome = dispatch(tx, *ctx.state, ctx.me);
        if (const TaintConflict* conflict = as_conflict(outcome)) {
            forwarded_out++;
            if (conflict->first_access) {
                assert(!tx.forwarded);
                tx.forwarded = true;
                ctx.worker_inboxes[conflict->owner]->send(
                    {ForwardTx{tx, send_seq++}, ctx.me});
            } else {
                // A non-first-access failure means a second thread owns one of
                // the keys; no other host could execute it either.
                ctx.master_inbox->send({OrphanTx{tx, false}, ctx.me});
            }
        } else {
            executed++;
            if (is_ok(outcome)) ok++; else logic_error++;
        }
    }

    if (ctx.log) {
        std::ostringstream os;
        os << "[Worker#" << int(ctx.me) << "] - Sending report Message { payload: AuthoringReport("
           << executed << ", " << forwarded_out << "), from: " << int(ctx.me) << " }. From "
           << executed << " executed, " << ok << " were ok and " << logic_error
           << " were logic error.";
        ctx.log->info(os.str());
    }
    ctx.master_inbox->send({AuthoringReport{executed, forwarded_out, ok, logic_error}, ctx.me});

    // Listen for forwarded transactions until told to terminate.
    uint64_t exec_seq = 0;
    while (true) {
        Message msg = ctx.worker_inboxes[ctx.me]->recv();
        if (std::holds_alternative<Terminate>(msg.payload)) break;
        if (auto* fwd = std::get_if<ForwardTx>(&msg.payload)) {
            DispatchOutcome outcome = dispatch(fwd->tx, *ctx.state, ctx.me);
            if (as_conflict(outcome)) {
                ctx.master_inbox->send({OrphanTx{fwd->tx, true}, ctx.me});
            } else {
                ctx.master_inbox->send(
                    {ForwardExecuted{fwd->tx.id, ctx.me, exec_seq++, is_logic_error(outcome)},
                     ctx.me});
            }
        } else {
            assert(false && "unexpected message in worker listen loop");
        }
    }
}

#ifndef NDEBUG
// Orphan characterization: at orphan time the transaction's keys are tainted
// by at least two distinct threads.
void check_orphan_taints(const Transaction& tx, const TaintableState& state) {
    std::set<ThreadId> owners;
    for (const StateKey& key : access_hints(tx)) {
        if (auto t = state.taint_of(key)) owners.insert(*t);
    }
    assert(owners.size() >= 2);
}
#endif

}  // namespace

AuthorResult author_block(const std::vector<Transaction>& queue, const Assignment& assignment,
                          TaintableState& state, size_t workers, const Digest& parent,
                          uint64_t number, Logger* log) {
    if (workers < 1 || workers > kMaxWorkers) throw EngineError("invalid worker count");
    if (assignment.size() != queue.size()) throw EngineError("assignment does not cover the queue");

    std::unordered_map<uint64_t, size_t> index_of;
    for (size_t i = 0; i < queue.size(); ++i) {
        if (!index_of.emplace(queue[i].id, i).second) {
            throw EngineError("duplicate transaction id in queue");
        }
    }

    // Distribution phase: build each worker's local queue in queue order.
    std::vector<std::vector<Transaction>> local(workers);
    for (size_t i = 0; i < queue.size(); ++i) local[assignment.worker_of[i]].push_back(queue[i]);

    std::vector<std::unique_ptr<Channel<Message>>> inboxes;
    std::vector<Channel<Message>*> inbox_ptrs;
    for (size_t w = 0; w < workers; ++w) {
        inboxes.push_back(std::make_unique<Channel<Message>>());
        inbox_ptrs.push_back(inboxes.back().get());
    }
    Channel<Message> master_inbox;

    state.set_workers_active(true);
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back(worker_main, WorkerContext{ThreadId(w), std::move(local[w]), &state,
                                                        inbox_ptrs, &master_inbox, log});
    }

    // Collection phase.
    std::vector<FinalPlacement> placement(queue.size());
    for (size_t i = 0; i < queue.size(); ++i) placement[i].tag = assignment.worker_of[i];

    std::vector<WorkerReport> reports;
    std::vector<Transaction> orphans;
    uint64_t forwarded = 0;
    while (!detect_termination(reports, workers, forwarded, orphans.size(), queue.size())) {
        Message msg = master_inbox.recv();
        if (auto* report = std::get_if<AuthoringReport>(&msg.payload)) {
            reports.push_back({msg.from, report->executed, report->forwarded_out, report->ok,
                               report->logic_error});
        } else if (auto* fe = std::get_if<ForwardExecuted>(&msg.payload)) {
            forwarded++;
            size_t idx = index_of.at(fe->tx_id);
            placement[idx] = {FinalPlacement::Kind::forward_executed, fe->by, fe->seq, 0};
        } else if (auto* orphan = std::get_if<OrphanTx>(&msg.payload)) {
            size_t idx = index_of.at(orphan->tx.id);
#ifndef NDEBUG
            check_orphan_taints(orphan->tx, state);
#endif
            placement[idx] = {FinalPlacement::Kind::orphaned, 0, 0, orphans.size()};
            orphans.push_back(orphan->tx);
        } else {
            throw EngineError("unexpected message in master collection loop");
        }
    }

    for (size_t w = 0; w < workers; ++w) inbox_ptrs[w]->send({Terminate{}, 0});
    for (std::thread& t : threads) t.join();
    state.set_workers_active(false);

    AuthoringStats stats;
    std::sort(reports.begin(), reports.end(),
              [](const WorkerReport& a, const WorkerReport& b) { return a.worker < b.worker; });
    stats.reports = reports;
    for (const WorkerReport& r : reports) stats.executed_in_place += r.executed;
    stats.forwarded = forwarded;
    stats.orphaned = orphans.size();

    if (log) {
        std::ostringstream os;
        os << "[Master  ] - Finishing Collection phase with [" << stats.executed_in_place
           << " executed][" << stats.forwarded << " forwarded][" << stats.orphaned << " orphaned]";
        log->info(os.str());
    }

    // Orphan phase: sequential execution with taints bypassed.
    for (const Transaction& tx : orphans) {
        DispatchOutcome outcome = apply_unchecked(tx, state);
        (void)outcome;  // Ok and LogicError both count as executed.
    }

    AuthorResult result;
    result.block.header.parent_hash = parent;
    result.block.header.number = number;
    result.block.body = assemble_body(queue, assignment, placement, workers);
    result.block.header.state_root = state.state_root();
    result.stats = stats;
    return result;
}

}  // namespace taintchain
