#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gcsim/block.hpp"
#include "gcsim/errors.hpp"

namespace gcsim {

// Little-endian byte buffers; used for message payloads and the garbled
// circuit container.
struct ByteWriter {
    std::vector<uint8_t> buf;

    void u8(uint8_t v) { buf.push_back(v); }
    void u16(uint16_t v) {
        for (int i = 0; i < 2; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void block(const Block& b) {
        auto a = b.bytes();
        buf.insert(buf.end(), a.begin(), a.end());
    }
    void bytes(const uint8_t* p, size_t n) { buf.insert(buf.end(), p, p + n); }
};

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}
    // Owning overload: keeps an rvalue buffer (e.g. a just-received message)
    // alive for the reader's lifetime.
    explicit ByteReader(std::vector<uint8_t> own) : owned_(std::move(own)), data_(owned_) {}
    ByteReader(const ByteReader&) = delete;
    ByteReader& operator=(const ByteReader&) = delete;

    uint8_t u8() { return take(1)[0]; }
    uint16_t u16() {
        const uint8_t* p = take(2);
        return static_cast<uint16_t>(p[0] | (p[1] << 8));
    }
    uint32_t u32() {
        const uint8_t* p = take(4);
        return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
               (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
    }
    uint64_t u64() {
        uint64_t lo = u32();
        uint64_t hi = u32();
        return lo | (hi << 32);
    }
    Block block() { return Block::from_bytes(take(16)); }
    const uint8_t* bytes(size_t n) { return take(n); }

    size_t remaining() const { return data_.size() - pos_; }
    void expect_done() const {
        if (pos_ != data_.size()) throw ProtocolError("trailing bytes in message");
    }

private:
    const uint8_t* take(size_t n) {
        if (remaining() < n) throw ProtocolError("truncated message");
        const uint8_t* p = data_.data() + pos_;
        pos_ += n;
        return p;
    }

    std::vector<uint8_t> owned_; // declared before data_, which may view it
    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

} // namespace gcsim
