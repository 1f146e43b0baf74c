#pragma once

#include <cstring>
#include <stdexcept>
#include <string>

#include "taintchain/types.hpp"

namespace taintchain {

/// Thrown on truncated or otherwise malformed input during decoding.
struct CodecError : std::runtime_error {
    explicit CodecError(const std::string& what) : std::runtime_error(what) {}
};

// Canonical binary format: fixed-width little-endian integers,
// u32-length-prefixed byte sequences, fixed arrays raw.

class Writer {
public:
    Bytes take() { return std::move(out_); }
    const Bytes& bytes() const { return out_; }

    void put_u8(uint8_t v) { out_.push_back(v); }

    void put_u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.push_back(uint8_t(v >> (8 * i)));
    }

    void put_u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) out_.push_back(uint8_t(v >> (8 * i)));
    }

    void put_u128(u128 v) {
        for (int i = 0; i < 16; ++i) out_.push_back(uint8_t(v >> (8 * i)));
    }

    template <size_t N>
    void put_array(const std::array<uint8_t, N>& a) {
        out_.insert(out_.end(), a.begin(), a.end());
    }

    void put_bytes(const Bytes& b) {
        put_u32(uint32_t(b.size()));
        out_.insert(out_.end(), b.begin(), b.end());
    }

    void put_raw(const Bytes& b) { out_.insert(out_.end(), b.begin(), b.end()); }

private:
    Bytes out_;
};

class Reader {
public:
    explicit Reader(const Bytes& data) : data_(data) {}

    uint8_t get_u8() {
        need(1);
        return data_[pos_++];
    }

    uint32_t get_u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(data_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }

    uint64_t get_u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(data_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }

    u128 get_u128() {
        need(16);
        u128 v = 0;
        for (int i = 0; i < 16; ++i) v |= u128(data_[pos_ + i]) << (8 * i);
        pos_ += 16;
        return v;
    }

    template <size_t N>
    std::array<uint8_t, N> get_array() {
        need(N);
        std::array<uint8_t, N> a;
        std::memcpy(a.data(), data_.data() + pos_, N);
        pos_ += N;
        return a;
    }

    Bytes get_bytes() {
        uint32_t len = get_u32();
        need(len);
        Bytes b(data_.begin() + pos_, data_.begin() + pos_ + len);
        pos_ += len;
        return b;
    }

    size_t remaining() const { return data_.size() - pos_; }

    /// Top-level decoders call this to reject trailing bytes.
    void finish() const {
        if (pos_ != data_.size()) throw CodecError("trailing bytes after decode");
    }

private:
    void need(size_t n) const {
        if (data_.size() - pos_ < n) throw CodecError("truncated input");
    }

    const Bytes& data_;
    size_t pos_ = 0;
};

}  // namespace taintchain
