#pragma once

#include <chrono>

#include "taintchain/block.hpp"
#include "taintchain/executor.hpp"
#include "taintchain/taint_state.hpp"

namespace taintchain {

struct ValidationReport {
    Digest computed_root{};
    bool valid = false;
    std::chrono::nanoseconds elapsed{0};
};

/// Re-execute a tagged block over a state holding the author's pre-block
/// genesis: one thread per distinct worker tag, each running its tag's
/// transactions in block order with taints active, then the orphan-tagged
/// transactions sequentially. The author guarantees cross-tag disjointness,
/// so a taint conflict here means the block is malformed and throws
/// MalformedBlockError. `valid` compares the computed root with the header.
ValidationReport validate_block(const TaggedBlock& block, TaintableState& state,
                                Logger* log = nullptr);

}  // namespace taintchain
