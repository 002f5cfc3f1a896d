#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "gcsim/channel.hpp"
#include "gcsim/circuit.hpp"
#include "gcsim/garble.hpp"
#include "gcsim/mac.hpp"
#include "gcsim/mode.hpp"

namespace gcsim {

class Rng;

constexpr uint16_t kProtocolVersion = 1;
constexpr uint32_t kMaxBatchSize = 4;

struct SessionConfig {
    Mode mode = Mode::MaxPerformance;
    uint32_t batch_size = kMaxBatchSize; // streamed mode, 1..4 tables per instruction
    bool mask_outputs = false;
    // Delivers transfers by plaintext choice (no group arithmetic). Insecure;
    // only for benchmarks and tests. Both sides must opt in.
    bool dealer_ot = false;
    // Garbler only: all garbling/masking randomness is derived from this
    // seed when present, otherwise from the OS.
    std::optional<std::array<uint8_t, 32>> seed;
};

// Transfer instances a session performs: one per input bit (the garbler's
// own bits ride fixed-payload instances) plus one per output decode bit; the
// streamed mode adds one interaction per instruction round trip.
uint64_t ot_count(const CircuitStats& s, Mode mode);

// Material the garbler keeps from a masked session. The pad never travels;
// whoever is handed (pad, key) can unmask and check the evaluator's copy.
struct OutputMask {
    std::vector<uint8_t> pad;
    MacKey key;
    Block tag;
};

struct GarblerResult {
    Transcript transcript;
    std::optional<OutputMask> mask;
};

struct EvaluatorResult {
    // Cleartext output bits; when the session masks outputs these are y ^ pad.
    std::vector<uint8_t> outputs;
    std::optional<Block> tag;
    Transcript transcript;
    uint64_t peak_live_labels = 0;
};

GarblerResult run_garbler(const Circuit& c, std::span<const uint8_t> x_g,
                          const SessionConfig& cfg, ByteChannel& raw);
EvaluatorResult run_evaluator(std::span<const uint8_t> x_e, const SessionConfig& cfg,
                              ByteChannel& raw);

std::pair<std::vector<uint8_t>, Block> mask_output_bits(std::span<const uint8_t> y,
                                                        std::span<const uint8_t> pad,
                                                        const MacKey& key);
// Checks the tag and strips the pad; throws MacError on mismatch.
std::vector<uint8_t> unmask_verify(std::span<const uint8_t> masked, Block tag,
                                   std::span<const uint8_t> pad, const MacKey& key);

// --- streamed-mode planning ---
//
// Free gates never travel. Every label the evaluator holds sits in a slot:
// slots [0, I) are the input bits in canonical order, slot I + t is the
// output of table t. A table input or an output wire is described by the
// set of slots whose labels XOR to its label (free-XOR collapses whole
// cones into such sets).

struct InstrTable {
    uint32_t table_index = 0;
    std::vector<uint32_t> in0_slots;
    std::vector<uint32_t> in1_slots;
    GarbledTable rows;
};

struct GarbledInstruction {
    uint32_t id = 0;
    std::vector<InstrTable> tables;
    std::vector<uint32_t> release_slots; // dead once this instruction ran
};

struct InstructionPlan {
    uint32_t input_slots = 0;
    std::vector<GarbledInstruction> instructions;
    std::vector<std::vector<uint32_t>> output_slots; // wiring per output
    uint64_t live_peak = 0; // worst-case slots simultaneously held
};

// Schedules tables in a dependency-respecting order drawn from order_rng
// (lowest-index order when null), keeps tables that drive output wires after
// all others, batches them batch_size apiece and attaches release lists from
// last-use analysis.
InstructionPlan plan_instructions(const GarbledCircuit& f, uint32_t batch_size,
                                  Rng* order_rng);

} // namespace gcsim
