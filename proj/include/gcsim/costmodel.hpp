#pragma once

#include <json.hpp>

#include "gcsim/circuit.hpp"
#include "gcsim/mode.hpp"

namespace gcsim {

// Per-unit costs the estimator runs on. Defaults follow the measured
// platform the formulas were calibrated against.
struct CostConstants {
    double cycle_ns_max = 50;          // per instruction, whole-circuit mode
    double cycle_ns_stream = 150;      // per instruction, streamed (3 cycles)
    double ot_latency_us = 24;         // per transfer instance
    double ot_mem_kb_per_io_bit = 3.2; // transfer state per input/output bit
    double stream_mem_kb_per_gate = 2; // stored instruction words per gate
    void validate() const;             // all strictly positive
};

CostConstants cost_constants_from_json(const nlohmann::json& j);

struct CostReport {
    Mode mode = Mode::MaxPerformance;
    uint64_t instructions = 0;
    uint64_t ot_interactions = 0;
    uint32_t io_bits = 0;
    uint64_t gates = 0;
    double time_instruction_s = 0;
    double time_ot_s = 0;
    double time_total_s = 0; // time_instruction + time_ot
    uint64_t garbled_bytes = 0;
    double ot_memory_kb = 0;
    double stream_memory_kb = 0; // streamed mode only
};

// Analytic cost of one session over the given circuit shape. Synthetic
// stats (external instruction/IO counts) replay reference rows; stats from
// circuit_stats() estimate a real netlist.
CostReport estimate(const CircuitStats& stats, Mode mode, const CostConstants& k = {});

nlohmann::json cost_report_json(const CostReport& r);
std::string cost_report_table(const CostReport& r);

} // namespace gcsim
