#pragma once

#include <array>
#include <utility>

#include "gcsim/block.hpp"

namespace gcsim {

class Rng;

// Two-flow 1-of-2 oblivious transfer in the ristretto255 group (255-bit
// prime-order, canonical 32-byte encodings, invalid encodings rejected).
// Sender publishes A = aG; the receiver answers B = bG or A + bG depending
// on its choice bit and derives its key from bA; the sender masks the two
// payloads under keys from aB and a(B - A). Payloads are 16-byte blocks.
//
// Flow per instance:
//   sender:   (state, msg A)  = ot_sender_setup(rng)
//   receiver: (state, msg B)  = ot_receiver_choose(choice, A, rng)
//   sender:   ciphertext pair = ot_sender_transfer(state, x0, x1, B)
//   receiver: x_choice        = ot_receiver_retrieve(state, pair)

constexpr size_t kOtPointBytes = 32;
using OtPoint = std::array<uint8_t, kOtPointBytes>;

struct OtSenderState {
    std::array<uint8_t, 32> scalar;
    OtPoint point_a;
    OtPoint point_aa; // a * A, for the derived second key
};

struct OtReceiverState {
    Block key;
    int choice = 0;
};

struct OtCiphertexts {
    Block c0, c1;
};

std::pair<OtSenderState, OtPoint> ot_sender_setup(Rng& rng);
std::pair<OtReceiverState, OtPoint> ot_receiver_choose(int choice, const OtPoint& sender_point,
                                                       Rng& rng);
OtCiphertexts ot_sender_transfer(const OtSenderState& st, Block x0, Block x1,
                                 const OtPoint& receiver_point);
Block ot_receiver_retrieve(const OtReceiverState& st, const OtCiphertexts& cts);

} // namespace gcsim
