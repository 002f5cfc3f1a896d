#include <doctest.h>

#include <random>

#include "gcsim/bench.hpp"
#include "gcsim/errors.hpp"
#include "gcsim/garble.hpp"
#include "gcsim/gen.hpp"
#include "gcsim/selector.hpp"

using namespace gcsim;

namespace {

std::vector<uint8_t> index_bits(uint32_t idx, uint32_t n) {
    std::vector<uint8_t> bits(n);
    for (uint32_t i = 0; i < n; ++i) bits[i] = (idx >> i) & 1;
    return bits;
}

// Checks that combined(member=m, x) matches member m on its own output
// positions, exhaustively up to 12 member input bits, sampled otherwise.
void check_member(const CombinedCircuit& cc, const std::vector<Circuit>& members,
                  uint32_t m, std::mt19937_64& rng) {
    const Circuit& mem = members[m];
    const uint32_t n = mem.input_size();
    auto one = [&](const std::vector<uint8_t>& x) {
        auto want = eval_plain(mem, x);
        auto got = eval_plain(cc.circuit, combined_input(cc, m, x));
        REQUIRE(got.size() >= want.size());
        for (size_t j = 0; j < want.size(); ++j) CHECK(got[j] == want[j]);
    };
    if (n <= 12) {
        for (uint32_t idx = 0; idx < (1u << n); ++idx) one(index_bits(idx, n));
    } else {
        for (int t = 0; t < 200; ++t) {
            std::vector<uint8_t> x(n);
            for (auto& b : x) b = rng() & 1;
            one(x);
        }
    }
}

} // namespace

TEST_CASE("two identical members fold into a working selector circuit") {
    std::vector<Circuit> members{c17(), c17()};
    CombinedCircuit cc = combine(members);
    CHECK(cc.bus_width == 5);
    CHECK(cc.selector_bits == 1);
    CHECK(cc.circuit.input_size() == 6);
    CHECK(cc.circuit.output_size() == 2);
    std::mt19937_64 rng(1);
    check_member(cc, members, 0, rng);
    check_member(cc, members, 1, rng);
}

TEST_CASE("mixed-width members share the bus and mux per position") {
    std::vector<Circuit> members{c17(), adder8(), hamming16()};
    CombinedCircuit cc = combine(members);
    CHECK(cc.bus_width == 16);
    CHECK(cc.selector_bits == 2);
    CHECK(cc.circuit.output_size() == 9); // widest member
    CHECK(cc.members.size() == 3);
    CHECK(cc.members[0].input_bits == 5);
    CHECK(cc.members[1].output_bits == 9);

    std::mt19937_64 rng(2);
    for (uint32_t m = 0; m < 3; ++m) check_member(cc, members, m, rng);
}

TEST_CASE("selector trees stay within the advertised gate allowance") {
    std::vector<Circuit> members{c17(), adder8(), hamming16()};
    CombinedCircuit cc = combine(members);
    CircuitStats comb = circuit_stats(cc.circuit);
    uint64_t member_tables = 0;
    for (const Circuit& m : members) member_tables += circuit_stats(m).nonfree_count;
    // mux allowance: 3 table gates per reused output position and member join
    uint64_t bound = 9ull * (members.size() - 1) * 3;
    CHECK(comb.nonfree_count > member_tables); // muxes are not free
    CHECK(comb.nonfree_count < member_tables + bound);
}

TEST_CASE("savings report compares one combined session against k") {
    std::vector<Circuit> members{c17(), adder8(), hamming16()};
    CombinedCircuit cc = combine(members);
    std::vector<CircuitStats> stats;
    for (const Circuit& m : members) stats.push_back(circuit_stats(m));
    CircuitStats comb = circuit_stats(cc.circuit);

    SelectorSavings s = selector_savings(stats, comb, Mode::MaxPerformance);
    CHECK(s.member_sessions == 3);
    CHECK(s.combined_sessions == 1);
    CHECK(s.member_bytes_total == 48 * (6 + 22 + 39));
    CHECK(s.combined_bytes == 48 * comb.nonfree_count);
    CHECK(s.mux_bound_bytes == 9 * 2 * 3 * 48);
    CHECK(s.combined_bytes < s.member_bytes_total + s.mux_bound_bytes);

    nlohmann::json j = savings_json(s);
    CHECK(j["sessions"]["members"] == 3);
    CHECK(j["garbled_bytes"]["combined"] == s.combined_bytes);
}

TEST_CASE("member map sidecar describes the combined layout") {
    std::vector<Circuit> members{c17(), adder8()};
    CombinedCircuit cc = combine(members);
    nlohmann::json j = member_map_json(cc);
    CHECK(j["bus_width"] == 16);
    CHECK(j["selector_bits"] == 1);
    CHECK(j["members"].size() == 2);
    CHECK(j["members"][0]["input_bits"] == 5);
    CHECK(j["members"][1]["output_bits"] == 9);
}

TEST_CASE("combined input zero-pads the bus and encodes the selector") {
    std::vector<Circuit> members{c17(), adder8(), hamming16()};
    CombinedCircuit cc = combine(members);
    std::vector<uint8_t> x{1, 0, 1, 1, 0};
    auto full = combined_input(cc, 0, x);
    REQUIRE(full.size() == 18);
    for (int i = 0; i < 5; ++i) CHECK(full[i] == x[i]);
    for (int i = 5; i < 16; ++i) CHECK(full[i] == 0);
    CHECK(full[16] == 0); // selector value 0
    CHECK(full[17] == 0);

    std::vector<uint8_t> h(16, 1);
    auto full2 = combined_input(cc, 2, h);
    CHECK(full2[16] == 0); // selector value 2, LSB first
    CHECK(full2[17] == 1);
    CHECK_THROWS_AS(combined_input(cc, 9, x), std::invalid_argument);
    CHECK_THROWS_AS(combined_input(cc, 0, std::vector<uint8_t>(4, 0)),
                    std::invalid_argument);
}

TEST_CASE("out-of-range selector values yield member-independent zeros or picks") {
    // with k=3 and 2 selector bits, value 3 addresses no member; the circuit
    // must still evaluate cleanly
    std::vector<Circuit> members{c17(), adder8(), hamming16()};
    CombinedCircuit cc = combine(members);
    std::vector<uint8_t> x(cc.circuit.input_size(), 0);
    x[16] = 1;
    x[17] = 1;
    CHECK_NOTHROW(eval_plain(cc.circuit, x));
}

TEST_CASE("combine validates its member list") {
    std::vector<Circuit> one{c17()};
    CHECK_THROWS_AS(combine(one), std::invalid_argument);
    std::vector<Circuit> none;
    CHECK_THROWS_AS(combine(none), std::invalid_argument);
}

TEST_CASE("the combined circuit garbles and simulates like any other") {
    std::vector<Circuit> members{c17(), adder8()};
    CombinedCircuit cc = combine(members);
    std::array<uint8_t, 32> seed{};
    seed[9] = 3;
    auto [f, e, d] = garble(cc.circuit, seed);
    std::mt19937_64 rng(12);
    for (int t = 0; t < 30; ++t) {
        std::vector<uint8_t> x(cc.circuit.input_size());
        for (auto& b : x) b = rng() & 1;
        auto labels = encode(e, x);
        CHECK(decode(d, evaluate(f, labels)) == eval_plain(cc.circuit, x));
    }
}
