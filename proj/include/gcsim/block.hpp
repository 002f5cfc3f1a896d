#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>

namespace gcsim {

// 128-bit block, the unit for wire labels, cipher blocks and field elements.
// Interpreted as the integer hi * 2^64 + lo; the serialized form is 16 bytes
// little-endian. Bit 0 of lo doubles as the color bit of a wire label.
struct Block {
    uint64_t lo = 0;
    uint64_t hi = 0;

    constexpr Block() = default;
    constexpr Block(uint64_t lo_, uint64_t hi_) : lo(lo_), hi(hi_) {}

    friend constexpr Block operator^(Block a, Block b) {
        return Block{a.lo ^ b.lo, a.hi ^ b.hi};
    }
    Block& operator^=(Block o) {
        lo ^= o.lo;
        hi ^= o.hi;
        return *this;
    }
    friend constexpr bool operator==(Block a, Block b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend constexpr bool operator!=(Block a, Block b) { return !(a == b); }

    constexpr bool zero() const { return lo == 0 && hi == 0; }

    // Color bit of a label (the select bit in point-and-permute).
    constexpr int color() const { return static_cast<int>(lo & 1); }

    // Carry-less doubling: plain 128-bit left shift, top bit discarded.
    constexpr Block shl1() const { return Block{lo << 1, (hi << 1) | (lo >> 63)}; }
    constexpr Block shl2() const { return shl1().shl1(); }

    std::array<uint8_t, 16> bytes() const {
        std::array<uint8_t, 16> out;
        for (int i = 0; i < 8; ++i) out[i] = static_cast<uint8_t>(lo >> (8 * i));
        for (int i = 0; i < 8; ++i) out[8 + i] = static_cast<uint8_t>(hi >> (8 * i));
        return out;
    }

    static Block from_bytes(const uint8_t* p) {
        Block b;
        for (int i = 0; i < 8; ++i) b.lo |= static_cast<uint64_t>(p[i]) << (8 * i);
        for (int i = 0; i < 8; ++i) b.hi |= static_cast<uint64_t>(p[8 + i]) << (8 * i);
        return b;
    }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s(32, '0');
        auto b = bytes();
        for (int i = 0; i < 16; ++i) {
            // most significant byte first
            s[2 * i] = digits[b[15 - i] >> 4];
            s[2 * i + 1] = digits[b[15 - i] & 0xf];
        }
        return s;
    }
};

struct BlockHash {
    size_t operator()(const Block& b) const {
        return static_cast<size_t>(b.lo * 0x9e3779b97f4a7c15ull ^ b.hi);
    }
};

} // namespace gcsim
