#pragma once

#include <string>

#include "gcsim/circuit.hpp"

namespace gcsim {

// ISCAS-style .bench reader. Grammar per line:
//   # comment
//   INPUT(wire)
//   OUTPUT(wire)
//   wire = KIND(in1, in2, ...)
// Kinds: AND OR NAND NOR XOR XNOR NOT BUF (case-insensitive; BUFF accepted).
// Gates with more than two inputs are lowered to left-associative chains of
// two-input gates; inverting kinds chain the non-inverting base kind and
// invert last, preserving n-ary semantics. Wires may be referenced before
// they are defined. All inputs land in the evaluator's set; reassign with
// Circuit::assign_garbler_inputs.
Circuit parse_bench(const std::string& text, const std::string& name = "");
Circuit load_bench_file(const std::string& path);

std::string emit_bench(const Circuit& c);

} // namespace gcsim
