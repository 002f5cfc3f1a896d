#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "gcsim/block.hpp"

namespace gcsim {

// Single-block AES-128 encryptor (ECB, no padding). Encrypt-only; one
// instance is not safe to share across threads.
class Aes128 {
public:
    explicit Aes128(const std::array<uint8_t, 16>& key);
    ~Aes128();
    Aes128(Aes128&&) noexcept;
    Aes128& operator=(Aes128&&) noexcept;
    Aes128(const Aes128&) = delete;
    Aes128& operator=(const Aes128&) = delete;

    Block encrypt(Block in) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Fixed-key cipher hash for gate rows:
//   H(A, B, T) = pi(K) ^ K   with   K = 2A ^ 4B ^ T
// where pi is AES-128 under the all-zero key and 2A / 4B are carry-less
// 128-bit left shifts. Correlation-robust in the random-permutation model.
Block fixed_key_hash(Block a, Block b, uint64_t tweak);
Block fixed_key_hash1(Block a, uint64_t tweak); // unary variant, B = 0

// Byte-stream randomness source.
class Rng {
public:
    virtual ~Rng() = default;
    virtual void fill(uint8_t* out, size_t n) = 0;

    Block block();
    uint64_t next_u64();
    // Unbiased draw from [0, n); n must be nonzero.
    uint64_t uniform_below(uint64_t n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }
};

// Deterministic stream: AES-128-CTR keyed from a 32-byte seed
// (first 16 bytes key, last 16 bytes counter base).
class SeedRng : public Rng {
public:
    explicit SeedRng(const std::array<uint8_t, 32>& seed);
    void fill(uint8_t* out, size_t n) override;

private:
    Aes128 aes_;
    Block iv_;
    uint64_t counter_ = 0;
    std::array<uint8_t, 16> buf_;
    size_t buf_used_ = 16;
};

// OS randomness.
class SystemRng : public Rng {
public:
    void fill(uint8_t* out, size_t n) override;
};

} // namespace gcsim
