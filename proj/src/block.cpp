#include "taintchain/block.hpp"

#include "taintchain/codec.hpp"

namespace taintchain {

Bytes TaggedBlock::encode() const {
    Writer w;
    w.put_array(header.parent_hash);
    w.put_u64(header.number);
    w.put_array(header.state_root);
    w.put_u32(uint32_t(body.size()));
    for (const TaggedTransaction& tt : body) {
        w.put_u8(tt.tag.raw);
        w.put_bytes(tt.tx.encode());
    }
    return w.take();
}

TaggedBlock TaggedBlock::decode(const Bytes& data) {
    Reader r(data);
    TaggedBlock block;
    block.header.parent_hash = r.get_array<32>();
    block.header.number = r.get_u64();
    block.header.state_root = r.get_array<32>();
    uint32_t count = r.get_u32();
    block.body.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
        TaggedTransaction tt;
        tt.tag = Tag{r.get_u8()};
        tt.tx = Transaction::decode(r.get_bytes());
        block.body.push_back(std::move(tt));
    }
    r.finish();
    return block;
}

}  // namespace taintchain
