#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcsim/circuit.hpp"
#include "gcsim/mode.hpp"

namespace gcsim {

// Folds k member circuits into one circuit with a shared input bus of
// width max(member inputs) plus ceil(log2 k) selector bits. Member i's
// logic is instantiated once over the bus; per output position a
// multiplexer tree keyed on the selector bits picks member sel's value
// (members without that position contribute constant 0, which the tree
// folds away). Garbling one combined circuit then serves any member
// without revealing to the evaluator which one ran.

struct MemberInfo {
    std::string name;
    uint32_t input_bits = 0;
    uint32_t output_bits = 0;
};

struct CombinedCircuit {
    Circuit circuit;               // all inputs on the evaluator side
    uint32_t bus_width = 0;        // shared data inputs, first on the bus
    uint32_t selector_bits = 0;    // appended after the bus, LSB first
    std::vector<MemberInfo> members;
};

CombinedCircuit combine(std::span<const Circuit> members);

// Sidecar describing the combined layout (bus width, selector position,
// member table) so callers can form inputs for a chosen member.
nlohmann::json member_map_json(const CombinedCircuit& cc);

// Replaces zero-padded member inputs and appends the selector value.
std::vector<uint8_t> combined_input(const CombinedCircuit& cc, uint32_t member,
                                    std::span<const uint8_t> member_input);

struct SelectorSavings {
    uint64_t member_sessions = 0;  // k separate garbled sessions
    uint64_t combined_sessions = 1;
    uint64_t member_bytes_total = 0; // garbled bytes if every member ships
    uint64_t combined_bytes = 0;
    uint64_t mux_bound_bytes = 0; // output_size * (k-1) * 3 tables' worth
    uint64_t member_instructions_total = 0;
    uint64_t member_instructions_max = 0;
    uint64_t combined_instructions = 0;
    uint64_t member_ot_total = 0; // per-mode transfer instances, all members
    uint64_t combined_ot = 0;
};

SelectorSavings selector_savings(std::span<const CircuitStats> members,
                                 const CircuitStats& combined, Mode mode);
nlohmann::json savings_json(const SelectorSavings& s);

} // namespace gcsim
