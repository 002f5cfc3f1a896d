#pragma once

#include <string>

#include "gcsim/circuit.hpp"

namespace gcsim {

// Reader for a structural Verilog subset: one module with scalar
// input/output/wire declarations and continuous assigns over &, |, ^, ~ and
// parentheses. Anything outside the subset (vectors, literals, instances,
// always blocks, ...) raises a ParseError carrying the line number.
// Expressions are lowered to two-input gates with fresh $t wires; inputs are
// assigned to the evaluator in declaration order.
Circuit parse_verilog(const std::string& text, const std::string& fallback_name = "");
Circuit load_verilog_file(const std::string& path);

} // namespace gcsim
