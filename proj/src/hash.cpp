#include "taintchain/hash.hpp"

#include <openssl/evp.h>

#include <cassert>
#include <stdexcept>

namespace taintchain {

Digest hash(std::span<const uint8_t> data) {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size()) {
        throw std::runtime_error("sha256 failed");
    }
    return out;
}

Digest hash(const Bytes& data) { return hash(std::span<const uint8_t>(data.data(), data.size())); }

Digest hash(std::string_view data) {
    return hash(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

StateKey derive_map_key(std::string_view module, std::string_view map, const Bytes& encoded_key) {
    assert(!module.empty() && !map.empty());
    std::string prefix;
    prefix.reserve(module.size() + 1 + map.size());
    prefix.append(module).append(":").append(map);

    Digest a = hash(prefix);
    Digest b = hash(encoded_key);

    StateKey key;
    key.bytes.reserve(64);
    key.bytes.insert(key.bytes.end(), a.begin(), a.end());
    key.bytes.insert(key.bytes.end(), b.begin(), b.end());
    return key;
}

std::string to_hex(const uint8_t* data, size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(len * 2);
    for (size_t i = 0; i < len; ++i) {
        s.push_back(digits[data[i] >> 4]);
        s.push_back(digits[data[i] & 0xf]);
    }
    return s;
}

}  // namespace taintchain
