#include <doctest.h>

#include <random>
#include <unordered_set>

#include "gcsim/bench.hpp"
#include "gcsim/errors.hpp"
#include "gcsim/garble.hpp"
#include "gcsim/gen.hpp"

using namespace gcsim;

namespace {

std::array<uint8_t, 32> seed_of(uint64_t n) {
    std::array<uint8_t, 32> s{};
    for (int i = 0; i < 8; ++i) s[i] = static_cast<uint8_t>(n >> (8 * i));
    return s;
}

std::vector<uint8_t> index_bits(uint32_t idx, uint32_t n) {
    std::vector<uint8_t> bits(n);
    for (uint32_t i = 0; i < n; ++i) bits[i] = (idx >> i) & 1;
    return bits;
}

std::vector<uint8_t> garbled_eval(const GarbledCircuit& f, const EncodingInfo& e,
                                  const DecodingInfo& d, std::span<const uint8_t> x) {
    auto labels = encode(e, x);
    auto y = evaluate(f, labels);
    return decode(d, y);
}

} // namespace

TEST_CASE("garbled evaluation equals plain evaluation across the suite") {
    std::mt19937_64 vec_rng(1234);
    for (const auto& [name, c] : benchmark_suite()) {
        CAPTURE(name);
        auto [f, e, d] = garble(c, seed_of(std::hash<std::string>{}(name)));
        const uint32_t n = c.input_size();
        if (n <= 12) {
            for (uint32_t idx = 0; idx < (1u << n); ++idx) {
                auto x = index_bits(idx, n);
                CHECK(garbled_eval(f, e, d, x) == eval_plain(c, x));
            }
        } else {
            int trials = c.gates.size() > 1000 ? 100 : 300;
            for (int t = 0; t < trials; ++t) {
                std::vector<uint8_t> x(n);
                for (auto& b : x) b = vec_rng() & 1;
                CHECK(garbled_eval(f, e, d, x) == eval_plain(c, x));
            }
        }
    }
}

TEST_CASE("free gates leave no table bytes; every other gate costs 48") {
    for (const auto& [name, c] : benchmark_suite()) {
        CAPTURE(name);
        auto [f, e, d] = garble(c, seed_of(7));
        CircuitStats s = circuit_stats(c);
        CHECK(f.table_bytes() == 48 * s.nonfree_count);
        CHECK(serialize_garbled(f).size() >= f.table_bytes());
    }
    // an all-XOR circuit garbles to zero ciphertext bytes
    auto [f, e, d] = garble(parity(16), seed_of(8));
    CHECK(f.tables.empty());
    CHECK(f.table_bytes() == 0);
}

TEST_CASE("all label pairs share one global offset") {
    Circuit c = adder8();
    GarbleArtifacts art = garble_full(c, seed_of(21));
    CHECK(art.delta.color() == 1); // offset color fixed so colors differ per pair
    for (const LabelPair& p : art.e.labels) {
        CHECK((p.l0 ^ p.l1) == art.delta);
        CHECK(p.l0.color() != p.l1.color());
    }
    for (WireId w = 0; w < c.wire_count(); ++w)
        CHECK(art.zero_labels[w] != Block{});
}

TEST_CASE("xor gates combine labels without tables") {
    Circuit c = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(z)\nz = XOR(a, b)\n");
    GarbleArtifacts art = garble_full(c, seed_of(3));
    WireId za = c.find_wire("a").value(), zb = c.find_wire("b").value(),
           zz = c.find_wire("z").value();
    CHECK(art.zero_labels[zz] == (art.zero_labels[za] ^ art.zero_labels[zb]));
    CHECK(art.f.tables.empty());
}

TEST_CASE("equal seeds garble identically, different seeds differently") {
    Circuit c = hamming16();
    auto [f1, e1, d1] = garble(c, seed_of(100));
    auto [f2, e2, d2] = garble(c, seed_of(100));
    auto [f3, e3, d3] = garble(c, seed_of(101));
    CHECK(serialize_garbled(f1) == serialize_garbled(f2));
    CHECK(d1.bits == d2.bits);
    CHECK(serialize_garbled(f1) != serialize_garbled(f3));
    bool labels_differ = false;
    for (size_t i = 0; i < e1.labels.size(); ++i)
        if (e1.labels[i].l0 != e3.labels[i].l0) labels_differ = true;
    CHECK(labels_differ);
}

TEST_CASE("labels across wires are pairwise distinct") {
    // all table gates: free gates may alias labels by construction (a buffer
    // passes its input label through), so exclude them here
    GarbleArtifacts art = garble_full(random_dag(300, 10, 5, 77, 0.0), seed_of(55));
    std::unordered_set<Block, BlockHash> seen;
    for (Block z : art.zero_labels) {
        CHECK(seen.insert(z).second);
        CHECK(seen.insert(z ^ art.delta).second);
    }
}

TEST_CASE("evaluation rejects wrong-size label vectors") {
    auto [f, e, d] = garble(c17(), seed_of(9));
    std::vector<WireLabel> few(3);
    CHECK_THROWS_AS(evaluate(f, few), std::invalid_argument);
    CHECK_THROWS_AS(encode(e, std::vector<uint8_t>{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(decode(d, std::vector<WireLabel>{}), std::invalid_argument);
}

TEST_CASE("garbled container round trips") {
    for (const auto& name : {"c17", "adder8", "parity16", "rand64"}) {
        auto [f, e, d] = garble(suite_circuit(name), seed_of(31));
        auto blob = serialize_garbled(f);
        GarbledCircuit back = deserialize_garbled(blob);
        CHECK(back.wire_count == f.wire_count);
        CHECK(back.garbler_inputs == f.garbler_inputs);
        CHECK(back.evaluator_inputs == f.evaluator_inputs);
        CHECK(back.outputs == f.outputs);
        CHECK(back.gates.size() == f.gates.size());
        CHECK(back.tables.size() == f.tables.size());
        CHECK(serialize_garbled(back) == blob);

        // evaluates the same after the round trip
        std::vector<uint8_t> x(f.input_size(), 1);
        CHECK(decode(d, evaluate(back, encode(e, x))) ==
              decode(d, evaluate(f, encode(e, x))));
    }
}

TEST_CASE("malformed garbled containers are rejected") {
    auto [f, e, d] = garble(c17(), seed_of(13));
    auto blob = serialize_garbled(f);

    auto expect_reject = [](std::vector<uint8_t> b) {
        CHECK_THROWS_AS(deserialize_garbled(b), CircuitError);
    };

    SUBCASE("bad magic") {
        blob[0] ^= 0xff;
        expect_reject(blob);
    }
    SUBCASE("bad version") {
        blob[4] = 0x7f;
        expect_reject(blob);
    }
    SUBCASE("truncated") {
        blob.resize(blob.size() - 5);
        expect_reject(blob);
    }
    SUBCASE("trailing garbage") {
        blob.push_back(0);
        expect_reject(blob);
    }
    SUBCASE("empty") { expect_reject({}); }
    SUBCASE("wire id out of range") {
        // wire_count lives right after magic+version+reserved; shrink it
        blob[8] = 1;
        blob[9] = blob[10] = blob[11] = 0;
        expect_reject(blob);
    }
}
