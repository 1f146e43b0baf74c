#pragma once

#include <vector>

#include "taintchain/runtime.hpp"
#include "taintchain/types.hpp"

namespace taintchain {

struct BlockHeader {
    Digest parent_hash{};
    uint64_t number = 0;
    Digest state_root{};

    bool operator==(const BlockHeader&) const = default;
};

struct TaggedTransaction {
    Tag tag;
    Transaction tx;
};

/// A block whose transactions each carry a one-byte executor tag. Within a
/// worker tag, transactions appear in the order that worker executed them;
/// orphan-tagged transactions appear in their sequential execution order.
///
/// Wire format: 32B parent hash, 8B LE number, 32B state root, 4B LE
/// transaction count, then per transaction a 1B tag followed by the
/// length-prefixed encoded transaction.
struct TaggedBlock {
    BlockHeader header;
    std::vector<TaggedTransaction> body;

    Bytes encode() const;
    static TaggedBlock decode(const Bytes& data);
};

}  // namespace taintchain
