#include "gcsim/crypto.hpp"

#include <openssl/evp.h>
#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace gcsim {

struct Aes128::Impl {
    EVP_CIPHER_CTX* ctx = nullptr;
};

Aes128::Aes128(const std::array<uint8_t, 16>& key) : impl_(new Impl) {
    impl_->ctx = EVP_CIPHER_CTX_new();
    if (!impl_->ctx ||
        EVP_EncryptInit_ex(impl_->ctx, EVP_aes_128_ecb(), nullptr, key.data(), nullptr) != 1)
        throw std::runtime_error("AES context init failed");
    EVP_CIPHER_CTX_set_padding(impl_->ctx, 0);
}

Aes128::~Aes128() {
    if (impl_ && impl_->ctx) EVP_CIPHER_CTX_free(impl_->ctx);
}

Aes128::Aes128(Aes128&&) noexcept = default;
Aes128& Aes128::operator=(Aes128&&) noexcept = default;

Block Aes128::encrypt(Block in) const {
    auto inb = in.bytes();
    uint8_t outb[32];
    int outl = 0;
    if (EVP_EncryptUpdate(impl_->ctx, outb, &outl, inb.data(), 16) != 1 || outl != 16)
        throw std::runtime_error("AES encrypt failed");
    return Block::from_bytes(outb);
}

static const Aes128& fixed_permutation() {
    thread_local Aes128 pi{std::array<uint8_t, 16>{}};
    return pi;
}

Block fixed_key_hash(Block a, Block b, uint64_t tweak) {
    Block k = a.shl1() ^ b.shl2() ^ Block{tweak, 0};
    return fixed_permutation().encrypt(k) ^ k;
}

Block fixed_key_hash1(Block a, uint64_t tweak) {
    return fixed_key_hash(a, Block{}, tweak);
}

Block Rng::block() {
    uint8_t b[16];
    fill(b, 16);
    return Block::from_bytes(b);
}

uint64_t Rng::next_u64() {
    uint8_t b[8];
    fill(b, 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

uint64_t Rng::uniform_below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below(0)");
    if (n == 1) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        uint64_t v = next_u64();
        if (v < limit) return v % n;
    }
}

SeedRng::SeedRng(const std::array<uint8_t, 32>& seed)
    : aes_([&] {
          std::array<uint8_t, 16> key;
          std::memcpy(key.data(), seed.data(), 16);
          return Aes128(key);
      }()),
      iv_(Block::from_bytes(seed.data() + 16)) {}

void SeedRng::fill(uint8_t* out, size_t n) {
    while (n > 0) {
        if (buf_used_ == 16) {
            Block b = aes_.encrypt(iv_ ^ Block{counter_, 0});
            ++counter_;
            buf_ = b.bytes();
            buf_used_ = 0;
        }
        size_t take = std::min(n, 16 - buf_used_);
        std::memcpy(out, buf_.data() + buf_used_, take);
        buf_used_ += take;
        out += take;
        n -= take;
    }
}

void SystemRng::fill(uint8_t* out, size_t n) {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
    randombytes_buf(out, n);
}

} // namespace gcsim
