#include "gcsim/ot.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

#include "gcsim/crypto.hpp"
#include "gcsim/errors.hpp"

namespace gcsim {
namespace {

constexpr uint64_t kOtKeyTweak = 0x6f74ull << 48; // domain-separates from gate tweaks

void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) throw std::runtime_error("libsodium init failed");
}

std::array<uint8_t, 32> random_scalar(Rng& rng) {
    uint8_t wide[64];
    std::array<uint8_t, 32> s{};
    do {
        rng.fill(wide, sizeof wide);
        crypto_core_ristretto255_scalar_reduce(s.data(), wide);
    } while (sodium_is_zero(s.data(), s.size()));
    return s;
}

Block key_from_point(const OtPoint& p) {
    return fixed_key_hash(Block::from_bytes(p.data()), Block::from_bytes(p.data() + 16),
                          kOtKeyTweak);
}

void check_point(const OtPoint& p) {
    if (!crypto_core_ristretto255_is_valid_point(p.data()))
        throw OtError("invalid group element");
}

} // namespace

std::pair<OtSenderState, OtPoint> ot_sender_setup(Rng& rng) {
    ensure_sodium();
    OtSenderState st;
    st.scalar = random_scalar(rng);
    if (crypto_scalarmult_ristretto255_base(st.point_a.data(), st.scalar.data()) != 0)
        throw OtError("scalar multiplication failed");
    if (crypto_scalarmult_ristretto255(st.point_aa.data(), st.scalar.data(),
                                       st.point_a.data()) != 0)
        throw OtError("scalar multiplication failed");
    return {st, st.point_a};
}

std::pair<OtReceiverState, OtPoint> ot_receiver_choose(int choice, const OtPoint& sender_point,
                                                       Rng& rng) {
    ensure_sodium();
    check_point(sender_point);
    auto b = random_scalar(rng);
    OtPoint bg;
    if (crypto_scalarmult_ristretto255_base(bg.data(), b.data()) != 0)
        throw OtError("scalar multiplication failed");
    OtPoint msg = bg;
    if (choice & 1) {
        if (crypto_core_ristretto255_add(msg.data(), sender_point.data(), bg.data()) != 0)
            throw OtError("invalid group element");
    }
    OtPoint ba;
    if (crypto_scalarmult_ristretto255(ba.data(), b.data(), sender_point.data()) != 0)
        throw OtError("scalar multiplication failed");
    return {OtReceiverState{key_from_point(ba), choice & 1}, msg};
}

OtCiphertexts ot_sender_transfer(const OtSenderState& st, Block x0, Block x1,
                                 const OtPoint& receiver_point) {
    ensure_sodium();
    check_point(receiver_point);
    OtPoint ab;
    if (crypto_scalarmult_ristretto255(ab.data(), st.scalar.data(), receiver_point.data()) != 0)
        throw OtError("invalid group element");
    // a(B - A) = aB - aA
    OtPoint shifted;
    if (crypto_core_ristretto255_sub(shifted.data(), ab.data(), st.point_aa.data()) != 0)
        throw OtError("invalid group element");
    return {x0 ^ key_from_point(ab), x1 ^ key_from_point(shifted)};
}

Block ot_receiver_retrieve(const OtReceiverState& st, const OtCiphertexts& cts) {
    return (st.choice ? cts.c1 : cts.c0) ^ st.key;
}

} // namespace gcsim
