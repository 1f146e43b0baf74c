#pragma once

#include <span>
#include <string_view>

#include "taintchain/types.hpp"

namespace taintchain {

/// SHA-256 of the given bytes. Deterministic across platforms; all golden
/// digests in the test suite derive from this function.
Digest hash(std::span<const uint8_t> data);
Digest hash(const Bytes& data);
Digest hash(std::string_view data);

/// Storage-map key derivation: hash(module ++ ":" ++ map) ++ hash(encoded_key).
/// Always 64 bytes.
StateKey derive_map_key(std::string_view module, std::string_view map, const Bytes& encoded_key);

}  // namespace taintchain
