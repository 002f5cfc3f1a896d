#pragma once

#include <array>
#include <span>
#include <tuple>
#include <vector>

#include "gcsim/block.hpp"
#include "gcsim/circuit.hpp"

namespace gcsim {

using WireLabel = Block;

struct LabelPair {
    WireLabel l0, l1;
    WireLabel pick(int bit) const { return bit ? l1 : l0; }
};

// Encoding information e: one label pair per input wire, canonical order.
struct EncodingInfo {
    std::vector<LabelPair> labels;
    uint32_t garbler_count = 0;
    uint32_t evaluator_count = 0;
};

// Decoding information d: one bit per output wire. The cleartext output bit
// is the label color XORed with this bit.
struct DecodingInfo {
    std::vector<uint8_t> bits;
};

// One gate as the evaluator sees it: free gates combine labels directly,
// table gates decrypt one of four rows, the first of which is implicit
// (three stored ciphertexts per table). The table index doubles as the
// hash tweak.
struct EvalGate {
    uint8_t is_table = 0;
    uint8_t n_in = 2;
    WireId in0 = 0;
    WireId in1 = 0;
    WireId out = 0;
    uint32_t table_index = 0; // valid when is_table
};

struct GarbledTable {
    std::array<Block, 3> rows;
};

// The transferable function F: topology plus garbled tables, no key material.
struct GarbledCircuit {
    uint32_t wire_count = 0;
    std::vector<WireId> garbler_inputs;
    std::vector<WireId> evaluator_inputs;
    std::vector<WireId> outputs;
    std::vector<EvalGate> gates; // dependency order
    std::vector<GarbledTable> tables;

    uint32_t input_size() const {
        return static_cast<uint32_t>(garbler_inputs.size() + evaluator_inputs.size());
    }
    uint64_t table_bytes() const { return tables.size() * 48; }
};

// Garbler-side byproducts kept private: the global offset and the zero
// label of every wire.
struct GarbleArtifacts {
    GarbledCircuit f;
    EncodingInfo e;
    DecodingInfo d;
    WireLabel delta;
    std::vector<WireLabel> zero_labels; // indexed by wire id
};

class Rng;

// Garbles with free-XOR, point-and-permute and row reduction. All
// randomness (offset and input labels) is drawn from rng; everything else
// is derived, so equal circuits and equal streams garble identically.
GarbleArtifacts garble_full(const Circuit& c, Rng& rng);
GarbleArtifacts garble_full(const Circuit& c, const std::array<uint8_t, 32>& seed);

// (F, e, d) as handed to a session.
std::tuple<GarbledCircuit, EncodingInfo, DecodingInfo> garble(
    const Circuit& c, const std::array<uint8_t, 32>& seed);

// En: picks the active label per input bit. x follows the canonical order.
std::vector<WireLabel> encode(const EncodingInfo& e, std::span<const uint8_t> x);

// Ev: walks the garbled gates; x_labels follows the canonical input order.
std::vector<WireLabel> evaluate(const GarbledCircuit& f,
                                std::span<const WireLabel> x_labels);

// De: maps output labels to cleartext bits.
std::vector<uint8_t> decode(const DecodingInfo& d, std::span<const WireLabel> y_labels);

// Binary container for F ("GEDA" magic, version 1). Validates structure on
// read and throws CircuitError on malformed data.
std::vector<uint8_t> serialize_garbled(const GarbledCircuit& f);
GarbledCircuit deserialize_garbled(std::span<const uint8_t> data);

} // namespace gcsim
