#include "taintchain/taint_state.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <mutex>
#include <thread>

#include "taintchain/hash.hpp"

namespace taintchain {

void TaintableState::latency_pause() const {
    uint32_t us = latency_us_.load(std::memory_order_relaxed);
    if (us > 0) std::this_thread::sleep_for(std::chrono::microseconds(us));
}

TaintableState::Entry* TaintableState::access(const StateKey& key, ThreadId current,
                                              ThreadId& owner_out) {
    Shard& sh = shard_for(key);

    // Fast path: shared access decides immediately for already-tainted keys.
    {
        std::shared_lock lock(sh.mu);
        auto it = sh.map.find(key);
        if (it != sh.map.end() && it->second.taint) {
            if (*it->second.taint == current) return &it->second;
            owner_out = *it->second.taint;
            return nullptr;
        }
    }

    // Untainted or missing: escalate to exclusive access to install the
    // taint, then release. Re-check, since another thread may have won.
    {
        std::unique_lock lock(sh.mu);
        auto [it, inserted] = sh.map.try_emplace(key);
        Entry& e = it->second;
        if (e.taint) {
            if (*e.taint == current) return &e;
            owner_out = *e.taint;
            return nullptr;
        }
        e.taint = current;
        return &e;
    }
}

ReadResult TaintableState::read(const StateKey& key, ThreadId current) {
    latency_pause();
    ThreadId owner = 0;
    Entry* e = access(key, current, owner);
    if (!e) return TaintError{owner};
    return ReadOk{e->value};
}

WriteResult TaintableState::write(const StateKey& key, Bytes value, ThreadId current) {
    latency_pause();
    ThreadId owner = 0;
    Entry* e = access(key, current, owner);
    if (!e) return TaintError{owner};
    e->value = std::move(value);
    return std::monostate{};
}

WriteResult TaintableState::mutate(const StateKey& key, ThreadId current,
                                   const std::function<Bytes(std::optional<Bytes>)>& update) {
    latency_pause();
    ThreadId owner = 0;
    Entry* e = access(key, current, owner);
    if (!e) return TaintError{owner};
    Bytes updated = update(e->value);
    latency_pause();
    e->value = std::move(updated);
    return std::monostate{};
}

std::optional<Bytes> TaintableState::unchecked_read(const StateKey& key) {
    assert(!workers_active_.load(std::memory_order_relaxed));
    latency_pause();
    Shard& sh = shard_for(key);
    std::shared_lock lock(sh.mu);
    auto it = sh.map.find(key);
    if (it == sh.map.end()) return std::nullopt;
    return it->second.value;
}

void TaintableState::unchecked_write(const StateKey& key, Bytes value) {
    assert(!workers_active_.load(std::memory_order_relaxed));
    latency_pause();
    Shard& sh = shard_for(key);
    std::unique_lock lock(sh.mu);
    sh.map[key].value = std::move(value);
}

std::vector<std::pair<StateKey, Bytes>> TaintableState::snapshot() const {
    std::vector<std::pair<StateKey, Bytes>> pairs;
    for (const Shard& sh : shards_) {
        std::shared_lock lock(sh.mu);
        for (const auto& [key, entry] : sh.map) {
            if (entry.value) pairs.emplace_back(key, *entry.value);
        }
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first.bytes < b.first.bytes; });
    return pairs;
}

Digest TaintableState::state_root() const {
    Bytes acc;
    for (const auto& [key, value] : snapshot()) {
        Digest kh = hash(key.bytes);
        Digest vh = hash(value);
        acc.insert(acc.end(), kh.begin(), kh.end());
        acc.insert(acc.end(), vh.begin(), vh.end());
    }
    return hash(acc);
}

void TaintableState::clear_taints() {
    for (Shard& sh : shards_) {
        std::unique_lock lock(sh.mu);
        for (auto& [key, entry] : sh.map) entry.taint.reset();
    }
}

std::optional<ThreadId> TaintableState::taint_of(const StateKey& key) const {
    const Shard& sh = shard_for(key);
    std::shared_lock lock(sh.mu);
    auto it = sh.map.find(key);
    if (it == sh.map.end()) return std::nullopt;
    return it->second.taint;
}

}  // namespace taintchain
