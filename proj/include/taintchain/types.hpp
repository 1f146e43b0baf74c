#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace taintchain {

using Bytes = std::vector<uint8_t>;
using u128 = unsigned __int128;

/// Fixed-width 32-byte account identifier, a stand-in for a public key.
using AccountId = std::array<uint8_t, 32>;

/// 32-byte output of the state hash function.
using Digest = std::array<uint8_t, 32>;

/// Worker thread identifier. Worker ids are 0..W-1; the value 255 is
/// reserved as the orphan tag and is never assigned to a worker.
using ThreadId = uint8_t;

inline constexpr uint8_t kOrphanTag = 0xff;
inline constexpr size_t kMaxWorkers = 255;

/// One-byte per-transaction tag: either a worker id or the orphan marker.
struct Tag {
    uint8_t raw = kOrphanTag;

    static Tag worker(ThreadId id) { return Tag{id}; }
    static Tag orphan() { return Tag{kOrphanTag}; }

    bool is_orphan() const { return raw == kOrphanTag; }
    ThreadId worker_id() const { return raw; }

    auto operator<=>(const Tag&) const = default;
};

/// Opaque state key. Derived keys are 64 bytes (two concatenated digests)
/// but the store treats any non-empty byte sequence as a key.
struct StateKey {
    Bytes bytes;

    auto operator<=>(const StateKey&) const = default;
};

struct StateKeyHash {
    size_t operator()(const StateKey& k) const {
        return std::hash<std::string_view>{}(
            std::string_view(reinterpret_cast<const char*>(k.bytes.data()), k.bytes.size()));
    }
};

std::string to_hex(const uint8_t* data, size_t len);

template <size_t N>
std::string to_hex(const std::array<uint8_t, N>& a) {
    return to_hex(a.data(), N);
}

}  // namespace taintchain
