#include "gcsim/costmodel.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "gcsim/protocol.hpp"

namespace gcsim {

void CostConstants::validate() const {
    for (double v : {cycle_ns_max, cycle_ns_stream, ot_latency_us, ot_mem_kb_per_io_bit,
                     stream_mem_kb_per_gate})
        if (!(v > 0)) throw std::invalid_argument("cost constants must be positive");
}

CostConstants cost_constants_from_json(const nlohmann::json& j) {
    static const char* known[] = {"cycle_ns_max", "cycle_ns_stream", "ot_latency_us",
                                  "ot_mem_kb_per_io_bit", "stream_mem_kb_per_gate"};
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw std::invalid_argument("unknown cost constant '" + key + "'");
        if (!value.is_number())
            throw std::invalid_argument("cost constant '" + key + "' must be a number");
    }
    CostConstants k;
    k.cycle_ns_max = j.value("cycle_ns_max", k.cycle_ns_max);
    k.cycle_ns_stream = j.value("cycle_ns_stream", k.cycle_ns_stream);
    k.ot_latency_us = j.value("ot_latency_us", k.ot_latency_us);
    k.ot_mem_kb_per_io_bit = j.value("ot_mem_kb_per_io_bit", k.ot_mem_kb_per_io_bit);
    k.stream_mem_kb_per_gate = j.value("stream_mem_kb_per_gate", k.stream_mem_kb_per_gate);
    k.validate();
    return k;
}

CostReport estimate(const CircuitStats& stats, Mode mode, const CostConstants& k) {
    k.validate();
    CostReport r;
    r.mode = mode;
    r.instructions = stats.instruction_count;
    r.ot_interactions = ot_count(stats, mode);
    r.io_bits = stats.input_size + stats.output_size;
    r.gates = stats.gate_count;

    double cycle_ns = mode == Mode::MaxPerformance ? k.cycle_ns_max : k.cycle_ns_stream;
    r.time_instruction_s = static_cast<double>(r.instructions) * cycle_ns * 1e-9;
    r.time_ot_s = static_cast<double>(r.ot_interactions) * k.ot_latency_us * 1e-6;
    r.time_total_s = r.time_instruction_s + r.time_ot_s;

    r.garbled_bytes = 48 * stats.nonfree_count;
    r.ot_memory_kb = k.ot_mem_kb_per_io_bit * r.io_bits;
    r.stream_memory_kb = mode == Mode::ResourceEfficient
                             ? k.stream_mem_kb_per_gate * static_cast<double>(r.gates)
                             : 0.0;
    return r;
}

nlohmann::json cost_report_json(const CostReport& r) {
    return {{"mode", mode_name(r.mode)},
            {"instructions", r.instructions},
            {"ot_interactions", r.ot_interactions},
            {"io_bits", r.io_bits},
            {"gates", r.gates},
            {"time_instruction_s", r.time_instruction_s},
            {"time_ot_s", r.time_ot_s},
            {"time_total_s", r.time_total_s},
            {"garbled_bytes", r.garbled_bytes},
            {"ot_memory_kb", r.ot_memory_kb},
            {"stream_memory_kb", r.stream_memory_kb}};
}

std::string cost_report_table(const CostReport& r) {
    char buf[640];
    std::snprintf(buf, sizeof buf,
                  "mode                 %s\n"
                  "instructions         %llu\n"
                  "ot interactions      %llu\n"
                  "io bits              %u\n"
                  "time: instructions   %.3e s\n"
                  "time: transfers      %.3e s\n"
                  "time: total          %.3e s\n"
                  "garbled bytes        %llu\n"
                  "memory: transfers    %.1f kB\n"
                  "memory: instructions %.1f kB\n",
                  mode_name(r.mode), static_cast<unsigned long long>(r.instructions),
                  static_cast<unsigned long long>(r.ot_interactions), r.io_bits,
                  r.time_instruction_s, r.time_ot_s, r.time_total_s,
                  static_cast<unsigned long long>(r.garbled_bytes), r.ot_memory_kb,
                  r.stream_memory_kb);
    return buf;
}

} // namespace gcsim
