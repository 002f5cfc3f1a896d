#pragma once

#include <span>

#include "gcsim/block.hpp"

namespace gcsim {

class Rng;

// Multiplication in GF(2^128) modulo x^128 + x^7 + x^2 + x + 1, with bit i
// of the block as the coefficient of x^i.
Block gf128_mul(Block a, Block b);

// Carter-Wegman one-time authenticator over bit strings: the message is
// packed into 128-bit blocks, a length block is appended, the polynomial is
// evaluated at r by Horner's rule and the result is blinded with s. A key
// must authenticate exactly one message.
struct MacKey {
    Block r, s;
};

MacKey mac_keygen(Rng& rng);
Block mac_tag(const MacKey& key, std::span<const uint8_t> bits);
bool mac_verify(const MacKey& key, std::span<const uint8_t> bits, Block tag);

} // namespace gcsim
