#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gcsim {

using WireId = uint32_t;

enum class GateKind : uint8_t { And, Or, Nand, Nor, Xor, Xnor, Not, Buf };

constexpr int kGateKindCount = 8;

// XOR, XNOR, NOT and BUF cost nothing under free-XOR; the rest need a table.
constexpr bool is_free(GateKind k) {
    return k == GateKind::Xor || k == GateKind::Xnor || k == GateKind::Not ||
           k == GateKind::Buf;
}

constexpr int gate_arity(GateKind k) {
    return (k == GateKind::Not || k == GateKind::Buf) ? 1 : 2;
}

bool gate_eval(GateKind k, bool a, bool b);
const char* gate_name(GateKind k);
std::optional<GateKind> gate_kind_from_name(const std::string& name);

struct Gate {
    GateKind kind;
    WireId in0 = 0;
    WireId in1 = 0; // unused when arity is 1
    WireId out = 0;
};

// Combinational netlist over boolean wires. Wire ids are dense indices into
// wire_names. Inputs are split between the two parties; the canonical input
// order used by encodings and transfer is garbler inputs then evaluator
// inputs, each in declaration order.
class Circuit {
public:
    std::string name;
    std::vector<std::string> wire_names;
    std::vector<Gate> gates;
    std::vector<WireId> garbler_inputs;
    std::vector<WireId> evaluator_inputs;
    std::vector<WireId> outputs;

    // Returns the id of the named wire, creating it if needed.
    WireId intern(const std::string& wire_name);
    std::optional<WireId> find_wire(const std::string& wire_name) const;

    uint32_t wire_count() const { return static_cast<uint32_t>(wire_names.size()); }
    uint32_t input_size() const {
        return static_cast<uint32_t>(garbler_inputs.size() + evaluator_inputs.size());
    }
    uint32_t output_size() const { return static_cast<uint32_t>(outputs.size()); }

    std::vector<WireId> input_order() const;

    // Moves the named wires from the evaluator's input set to the garbler's,
    // keeping declaration order within each set.
    void assign_garbler_inputs(const std::vector<std::string>& names);

    // Structural checks: ids in range, exactly one driver per non-input wire,
    // no driver on inputs, disjoint party sets, outputs defined, no cycle.
    void validate() const;

private:
    std::unordered_map<std::string, WireId> index_;
};

struct CircuitStats {
    std::string name;
    uint64_t gate_count = 0;
    uint64_t xor_count = 0;     // free gates: XOR/XNOR/NOT/BUF
    uint64_t nonfree_count = 0; // table gates
    uint32_t input_size = 0;
    uint32_t output_size = 0;
    uint64_t instruction_count = 0; // ceil(nonfree / 4)
    std::array<uint64_t, kGateKindCount> kind_histogram{};
};

CircuitStats circuit_stats(const Circuit& c);

// Gate indices in dependency order; ties broken by lowest index first, so the
// result is deterministic. Throws CircuitError on a combinational cycle.
std::vector<uint32_t> topo_order(const Circuit& c);

// Plain evaluation. x follows the canonical input order.
std::vector<uint8_t> eval_plain(const Circuit& c, std::span<const uint8_t> x);

} // namespace gcsim
