#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gcsim/circuit.hpp"

namespace gcsim {

// Built-in benchmark circuits. All inputs start on the evaluator side.

Circuit single_gate(GateKind kind);

// The 6-NAND ISCAS c17 netlist.
Circuit c17();

// 8-bit ripple-carry adder: a0..a7 + b0..b7 -> s0..s7, c8.
// 15 XOR and 22 table gates.
Circuit adder8();

// Hamming distance of two 8-bit words in carry-save form: outputs s0..s3 and
// c0..c3 with sum(s_i) + 2*sum(c_i) = popcount(a ^ b). The bit differences
// are NAND-decomposed and one compressor sum is built from OR/NAND/AND,
// leaving exactly 3 XOR gates next to 39 table gates.
Circuit hamming16();

Circuit parity(uint32_t n_inputs);
Circuit inverter_chain(uint32_t length);
Circuit wide_and(uint32_t n_inputs);

// Seeded random DAG with window-local wiring (each gate reads wires at most
// `window` positions back), which keeps the live-label band narrow under
// streamed evaluation. free_fraction picks XOR-family gates.
Circuit random_dag(uint32_t n_gates, uint32_t n_inputs, uint32_t n_outputs, uint64_t seed,
                   double free_fraction = 0.3, uint32_t window = 256);

// Named circuits covering every gate kind, hand-built benchmarks and seeded
// DAGs up to 6000 gates; used by tests and the CLI generator.
std::vector<std::pair<std::string, Circuit>> benchmark_suite();

// Single suite entry by name; throws std::invalid_argument for unknown names.
Circuit suite_circuit(const std::string& name);
std::vector<std::string> suite_names();

} // namespace gcsim
