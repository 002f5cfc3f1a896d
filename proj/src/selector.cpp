#include "gcsim/selector.hpp"

#include <algorithm>
#include <optional>

#include "gcsim/errors.hpp"
#include "gcsim/protocol.hpp"

namespace gcsim {

CombinedCircuit combine(std::span<const Circuit> members) {
    if (members.size() < 2) throw std::invalid_argument("combining needs at least two circuits");
    if (members.size() > 64) throw std::invalid_argument("too many circuits to combine");
    for (const Circuit& m : members) m.validate();

    const uint32_t k = static_cast<uint32_t>(members.size());
    uint32_t bus = 0, max_out = 0;
    for (const Circuit& m : members) {
        bus = std::max(bus, m.input_size());
        max_out = std::max(max_out, m.output_size());
    }
    uint32_t sel_bits = 1;
    while ((1u << sel_bits) < k) ++sel_bits;

    CombinedCircuit cc;
    cc.bus_width = bus;
    cc.selector_bits = sel_bits;
    Circuit& c = cc.circuit;
    c.name = "combined";

    std::vector<WireId> bus_wires, sel_wires;
    for (uint32_t i = 0; i < bus; ++i) {
        WireId w = c.intern("in" + std::to_string(i));
        bus_wires.push_back(w);
        c.evaluator_inputs.push_back(w);
    }
    for (uint32_t b = 0; b < sel_bits; ++b) {
        WireId w = c.intern("sel" + std::to_string(b));
        sel_wires.push_back(w);
        c.evaluator_inputs.push_back(w);
    }

    // member logic, instantiated over the shared bus prefix
    std::vector<std::vector<WireId>> member_outputs(k);
    for (uint32_t m = 0; m < k; ++m) {
        const Circuit& src = members[m];
        std::string prefix = "m" + std::to_string(m) + "_";
        std::vector<WireId> map(src.wire_count(), UINT32_MAX);
        std::vector<WireId> src_inputs = src.input_order();
        for (size_t j = 0; j < src_inputs.size(); ++j) map[src_inputs[j]] = bus_wires[j];
        auto mapped = [&](WireId w) {
            if (map[w] == UINT32_MAX) map[w] = c.intern(prefix + src.wire_names[w]);
            return map[w];
        };
        for (uint32_t gi : topo_order(src)) {
            const Gate& g = src.gates[gi];
            Gate ng{g.kind, mapped(g.in0), 0, 0};
            if (gate_arity(g.kind) == 2) ng.in1 = mapped(g.in1);
            ng.out = mapped(g.out);
            c.gates.push_back(ng);
        }
        for (WireId w : src.outputs) member_outputs[m].push_back(mapped(w));
        cc.members.push_back({src.name.empty() ? "member" + std::to_string(m) : src.name,
                              src.input_size(), src.output_size()});
    }

    // inverted selector wires, shared by every tree
    std::vector<WireId> nsel(sel_bits);
    for (uint32_t b = 0; b < sel_bits; ++b) {
        nsel[b] = c.intern("nsel" + std::to_string(b));
        c.gates.push_back({GateKind::Not, sel_wires[b], 0, nsel[b]});
    }

    uint32_t aux = 0;
    auto fresh = [&]() { return c.intern("$x" + std::to_string(aux++)); };
    auto and2 = [&](WireId a, WireId b) {
        WireId out = fresh();
        c.gates.push_back({GateKind::And, a, b, out});
        return out;
    };
    auto or2 = [&](WireId a, WireId b) {
        WireId out = fresh();
        c.gates.push_back({GateKind::Or, a, b, out});
        return out;
    };

    // per output position: binary tree over member candidates, selector bit
    // b deciding at level b. Absent candidates read as constant 0 and fold
    // to a half mux or vanish; odd leftovers pass through gate-free.
    using Node = std::optional<WireId>;
    for (uint32_t p = 0; p < max_out; ++p) {
        std::vector<Node> nodes;
        for (uint32_t m = 0; m < k; ++m)
            nodes.push_back(p < member_outputs[m].size() ? Node(member_outputs[m][p])
                                                         : std::nullopt);
        for (uint32_t b = 0; b < sel_bits; ++b) {
            std::vector<Node> next;
            size_t i = 0;
            for (; i + 1 < nodes.size(); i += 2) {
                Node l = nodes[i], r = nodes[i + 1];
                if (!l && !r)
                    next.push_back(std::nullopt);
                else if (l && r)
                    next.push_back(or2(and2(*l, nsel[b]), and2(*r, sel_wires[b])));
                else if (l)
                    next.push_back(and2(*l, nsel[b]));
                else
                    next.push_back(and2(*r, sel_wires[b]));
            }
            if (i < nodes.size()) next.push_back(nodes[i]);
            nodes = std::move(next);
        }
        if (!nodes[0]) throw CircuitError("empty output position");
        c.outputs.push_back(*nodes[0]);
    }

    c.validate();
    return cc;
}

std::vector<uint8_t> combined_input(const CombinedCircuit& cc, uint32_t member,
                                    std::span<const uint8_t> member_input) {
    if (member >= cc.members.size()) throw std::invalid_argument("member index out of range");
    if (member_input.size() != cc.members[member].input_bits)
        throw std::invalid_argument("member input length mismatch");
    std::vector<uint8_t> x(cc.bus_width + cc.selector_bits, 0);
    for (size_t i = 0; i < member_input.size(); ++i) x[i] = member_input[i] & 1;
    for (uint32_t b = 0; b < cc.selector_bits; ++b)
        x[cc.bus_width + b] = static_cast<uint8_t>((member >> b) & 1);
    return x;
}

nlohmann::json member_map_json(const CombinedCircuit& cc) {
    nlohmann::json members = nlohmann::json::array();
    for (size_t i = 0; i < cc.members.size(); ++i) {
        members.push_back({{"index", i},
                           {"name", cc.members[i].name},
                           {"input_bits", cc.members[i].input_bits},
                           {"output_bits", cc.members[i].output_bits}});
    }
    return {{"bus_width", cc.bus_width},
            {"selector_bits", cc.selector_bits},
            {"selector_after_bus", true},
            {"members", members}};
}

SelectorSavings selector_savings(std::span<const CircuitStats> members,
                                 const CircuitStats& combined, Mode mode) {
    SelectorSavings s;
    s.member_sessions = members.size();
    s.combined_sessions = 1;
    for (const CircuitStats& m : members) {
        s.member_bytes_total += 48 * m.nonfree_count;
        s.member_instructions_total += m.instruction_count;
        s.member_instructions_max = std::max(s.member_instructions_max, m.instruction_count);
        s.member_ot_total += ot_count(m, mode);
    }
    s.combined_bytes = 48 * combined.nonfree_count;
    s.combined_instructions = combined.instruction_count;
    s.combined_ot = ot_count(combined, mode);
    if (!members.empty())
        s.mux_bound_bytes =
            static_cast<uint64_t>(combined.output_size) * (members.size() - 1) * 3 * 48;
    return s;
}

nlohmann::json savings_json(const SelectorSavings& s) {
    return {{"sessions", {{"members", s.member_sessions}, {"combined", s.combined_sessions}}},
            {"garbled_bytes",
             {{"members_total", s.member_bytes_total},
              {"combined", s.combined_bytes},
              {"mux_bound", s.mux_bound_bytes}}},
            {"instructions",
             {{"members_total", s.member_instructions_total},
              {"members_max", s.member_instructions_max},
              {"combined", s.combined_instructions}}},
            {"ot_instances",
             {{"members_total", s.member_ot_total}, {"combined", s.combined_ot}}}};
}

} // namespace gcsim
