#pragma once

#include <vector>

#include "taintchain/runtime.hpp"
#include "taintchain/types.hpp"

namespace taintchain {

/// Per-transaction worker assignment, parallel to the input queue. Worker ids
/// only; the orphan tag is never assigned here.
struct Assignment {
    std::vector<ThreadId> worker_of;  // indexed by queue position

    size_t size() const { return worker_of.size(); }
};

/// Pluggable strategy tagging each queued transaction with a worker id before
/// authoring. Runs single-threaded, ahead of the engine; its cost is excluded
/// from authoring measurements.
class Distributor {
public:
    virtual ~Distributor() = default;
    virtual Assignment assign(const std::vector<Transaction>& queue, size_t workers) const = 0;
};

/// Queue position i goes to worker i mod W. Ignores access hints.
class RoundRobinDistributor : public Distributor {
public:
    Assignment assign(const std::vector<Transaction>& queue, size_t workers) const override;
};

/// Groups transactions into connected components of the bipartite
/// transaction/state-key graph induced by the access hints, then spreads the
/// components over workers with a greedy balancing rule: components sorted by
/// size descending (ties: smallest contained tx id), each placed on the
/// worker with the least transactions so far (ties: lowest worker id).
class ConnectedComponentsDistributor : public Distributor {
public:
    Assignment assign(const std::vector<Transaction>& queue, size_t workers) const override;
};

/// Component partition of the queue under hint-sharing: result[i] is the
/// component id of queue position i. Exposed for diagnostics (component size
/// distributions) and oracle tests.
std::vector<size_t> hint_components(const std::vector<Transaction>& queue);

/// Size of the largest hint component, in transactions.
size_t largest_component_size(const std::vector<Transaction>& queue);

}  // namespace taintchain
