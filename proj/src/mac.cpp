#include "gcsim/mac.hpp"

#include <sodium.h>

#include "gcsim/crypto.hpp"

namespace gcsim {

Block gf128_mul(Block a, Block b) {
    Block acc;
    for (int i = 0; i < 128; ++i) {
        uint64_t bit = i < 64 ? (b.lo >> i) & 1 : (b.hi >> (i - 64)) & 1;
        if (bit) acc ^= a;
        uint64_t carry = a.hi >> 63;
        a = a.shl1();
        if (carry) a.lo ^= 0x87; // x^128 = x^7 + x^2 + x + 1
    }
    return acc;
}

MacKey mac_keygen(Rng& rng) { return {rng.block(), rng.block()}; }

Block mac_tag(const MacKey& key, std::span<const uint8_t> bits) {
    Block acc;
    Block cur;
    int filled = 0;
    auto flush = [&]() {
        acc = gf128_mul(acc ^ cur, key.r);
        cur = Block{};
        filled = 0;
    };
    for (uint8_t b : bits) {
        if (b & 1) {
            if (filled < 64)
                cur.lo |= 1ull << filled;
            else
                cur.hi |= 1ull << (filled - 64);
        }
        if (++filled == 128) flush();
    }
    if (filled > 0) flush();
    acc = gf128_mul(acc ^ Block{static_cast<uint64_t>(bits.size()), 0}, key.r);
    return acc ^ key.s;
}

bool mac_verify(const MacKey& key, std::span<const uint8_t> bits, Block tag) {
    auto want = mac_tag(key, bits).bytes();
    auto got = tag.bytes();
    return sodium_memcmp(want.data(), got.data(), 16) == 0;
}

} // namespace gcsim
