#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "taintchain/types.hpp"

namespace taintchain {

/// Foreign access to a tainted key; carries the owner's id.
struct TaintError {
    ThreadId owner;
};

/// Result of a taint-checked read: the stored value, an absent marker
/// (key now tainted by the caller but never written), or a taint error.
struct ReadOk {
    std::optional<Bytes> value;  // nullopt == absent
};
using ReadResult = std::variant<ReadOk, TaintError>;

using WriteResult = std::variant<std::monostate, TaintError>;

/// Concurrent key -> (taint, value) store. The first thread to access a key
/// taints it; the owner can access freely; any other thread fails immediately
/// with the owner's id. Values are mutated only by the taint owner, or via the
/// unchecked_* calls when no workers are active.
class TaintableState {
public:
    TaintableState() = default;

    // Taint-checked accessors, safe under full concurrency.
    ReadResult read(const StateKey& key, ThreadId current);
    WriteResult write(const StateKey& key, Bytes value, ThreadId current);

    /// Read-modify-write under the same taint rules. `update` receives the
    /// current value (nullopt if absent) and returns the new value. Atomic
    /// with respect to other threads because only the owner can get here.
    WriteResult mutate(const StateKey& key, ThreadId current,
                       const std::function<Bytes(std::optional<Bytes>)>& update);

    // Taint-bypassing accessors. Caller must guarantee no worker threads are
    // active (orphan phase, genesis setup, sequential baselines).
    std::optional<Bytes> unchecked_read(const StateKey& key);
    void unchecked_write(const StateKey& key, Bytes value);

    /// Digest of all (key, value) pairs sorted lexicographically by key.
    /// Taints and absent markers are excluded. Requires quiescence.
    Digest state_root() const;

    /// All present (key, value) pairs sorted by key. Requires quiescence.
    std::vector<std::pair<StateKey, Bytes>> snapshot() const;

    /// Drop every taint, keeping values. Requires quiescence.
    void clear_taints();

    /// Current taint of a key, if any. Test/diagnostic surface.
    std::optional<ThreadId> taint_of(const StateKey& key) const;

    /// Artificial per-access latency (microseconds) injected into every read
    /// and write path, modelling slow storage. Default 0.
    void set_latency_us(uint32_t us) { latency_us_ = us; }
    uint32_t latency_us() const { return latency_us_; }

    /// Debug contract check for the unchecked_* calls.
    void set_workers_active(bool active) { workers_active_.store(active, std::memory_order_relaxed); }

private:
    struct Entry {
        std::optional<ThreadId> taint;
        std::optional<Bytes> value;
    };

    static constexpr size_t kShards = 64;

    struct Shard {
        mutable std::shared_mutex mu;
        std::unordered_map<StateKey, Entry, StateKeyHash> map;
    };

    Shard& shard_for(const StateKey& key) {
        return shards_[StateKeyHash{}(key) % kShards];
    }
    const Shard& shard_for(const StateKey& key) const {
        return shards_[StateKeyHash{}(key) % kShards];
    }

    void latency_pause() const;

    /// Resolve the taint decision for `current`, installing the taint (and the
    /// entry) if the key is fresh. Returns the owning entry on success.
    Entry* access(const StateKey& key, ThreadId current, ThreadId& owner_out);

    std::vector<Shard> shards_{kShards};
    std::atomic<uint32_t> latency_us_{0};
    std::atomic<bool> workers_active_{false};
};

}  // namespace taintchain
