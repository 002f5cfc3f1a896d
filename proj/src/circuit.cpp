#include "gcsim/circuit.hpp"

#include <algorithm>
#include <queue>

#include "gcsim/errors.hpp"

namespace gcsim {

bool gate_eval(GateKind k, bool a, bool b) {
    switch (k) {
        case GateKind::And: return a && b;
        case GateKind::Or: return a || b;
        case GateKind::Nand: return !(a && b);
        case GateKind::Nor: return !(a || b);
        case GateKind::Xor: return a != b;
        case GateKind::Xnor: return a == b;
        case GateKind::Not: return !a;
        case GateKind::Buf: return a;
    }
    return false;
}

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::And: return "AND";
        case GateKind::Or: return "OR";
        case GateKind::Nand: return "NAND";
        case GateKind::Nor: return "NOR";
        case GateKind::Xor: return "XOR";
        case GateKind::Xnor: return "XNOR";
        case GateKind::Not: return "NOT";
        case GateKind::Buf: return "BUF";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_name(const std::string& name) {
    std::string up;
    up.reserve(name.size());
    for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (up == "AND") return GateKind::And;
    if (up == "OR") return GateKind::Or;
    if (up == "NAND") return GateKind::Nand;
    if (up == "NOR") return GateKind::Nor;
    if (up == "XOR") return GateKind::Xor;
    if (up == "XNOR") return GateKind::Xnor;
    if (up == "NOT" || up == "INV") return GateKind::Not;
    if (up == "BUF" || up == "BUFF") return GateKind::Buf;
    return std::nullopt;
}

WireId Circuit::intern(const std::string& wire_name) {
    auto it = index_.find(wire_name);
    if (it != index_.end()) return it->second;
    WireId id = static_cast<WireId>(wire_names.size());
    wire_names.push_back(wire_name);
    index_.emplace(wire_name, id);
    return id;
}

std::optional<WireId> Circuit::find_wire(const std::string& wire_name) const {
    auto it = index_.find(wire_name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<WireId> Circuit::input_order() const {
    std::vector<WireId> order = garbler_inputs;
    order.insert(order.end(), evaluator_inputs.begin(), evaluator_inputs.end());
    return order;
}

void Circuit::assign_garbler_inputs(const std::vector<std::string>& names) {
    std::vector<WireId> wanted;
    for (const auto& n : names) {
        auto id = find_wire(n);
        if (!id) throw CircuitError("unknown input wire: " + n);
        wanted.push_back(*id);
    }
    std::vector<WireId> all = input_order();
    for (WireId w : wanted)
        if (std::find(all.begin(), all.end(), w) == all.end())
            throw CircuitError("not an input wire: " + wire_names[w]);
    garbler_inputs.clear();
    evaluator_inputs.clear();
    for (WireId w : all) {
        bool g = std::find(wanted.begin(), wanted.end(), w) != wanted.end();
        (g ? garbler_inputs : evaluator_inputs).push_back(w);
    }
}

void Circuit::validate() const {
    uint32_t n = wire_count();
    auto check_id = [&](WireId w, const char* what) {
        if (w >= n) throw CircuitError(std::string("wire id out of range in ") + what);
    };
    std::vector<uint8_t> is_input(n, 0), driven(n, 0);
    for (WireId w : garbler_inputs) {
        check_id(w, "garbler inputs");
        if (is_input[w]) throw CircuitError("duplicate input wire: " + wire_names[w]);
        is_input[w] = 1;
    }
    for (WireId w : evaluator_inputs) {
        check_id(w, "evaluator inputs");
        if (is_input[w]) throw CircuitError("duplicate input wire: " + wire_names[w]);
        is_input[w] = 1;
    }
    for (const Gate& g : gates) {
        check_id(g.out, "gate output");
        check_id(g.in0, "gate input");
        if (gate_arity(g.kind) == 2) check_id(g.in1, "gate input");
        if (is_input[g.out])
            throw CircuitError("input wire driven by a gate: " + wire_names[g.out]);
        if (driven[g.out])
            throw CircuitError("wire driven twice: " + wire_names[g.out]);
        driven[g.out] = 1;
    }
    auto check_source = [&](WireId w) {
        if (!is_input[w] && !driven[w])
            throw CircuitError("undriven wire: " + wire_names[w]);
    };
    for (const Gate& g : gates) {
        check_source(g.in0);
        if (gate_arity(g.kind) == 2) check_source(g.in1);
    }
    for (WireId w : outputs) {
        check_id(w, "outputs");
        check_source(w);
    }
    topo_order(*this); // throws on cycles
}

CircuitStats circuit_stats(const Circuit& c) {
    CircuitStats s;
    s.name = c.name;
    s.gate_count = c.gates.size();
    s.input_size = c.input_size();
    s.output_size = c.output_size();
    for (const Gate& g : c.gates) {
        s.kind_histogram[static_cast<size_t>(g.kind)]++;
        if (is_free(g.kind))
            s.xor_count++;
        else
            s.nonfree_count++;
    }
    s.instruction_count = (s.nonfree_count + 3) / 4;
    return s;
}

std::vector<uint32_t> topo_order(const Circuit& c) {
    uint32_t n = c.wire_count();
    std::vector<int32_t> driver(n, -1);
    for (uint32_t i = 0; i < c.gates.size(); ++i) driver[c.gates[i].out] = static_cast<int32_t>(i);

    std::vector<uint32_t> pending(c.gates.size(), 0);
    std::vector<std::vector<uint32_t>> dependents(c.gates.size());
    for (uint32_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        WireId ins[2] = {g.in0, g.in1};
        for (int j = 0; j < gate_arity(g.kind); ++j) {
            int32_t d = driver[ins[j]];
            if (d >= 0) {
                pending[i]++;
                dependents[static_cast<uint32_t>(d)].push_back(i);
            }
        }
    }
    std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<>> ready;
    for (uint32_t i = 0; i < c.gates.size(); ++i)
        if (pending[i] == 0) ready.push(i);

    std::vector<uint32_t> order;
    order.reserve(c.gates.size());
    while (!ready.empty()) {
        uint32_t i = ready.top();
        ready.pop();
        order.push_back(i);
        for (uint32_t d : dependents[i])
            if (--pending[d] == 0) ready.push(d);
    }
    if (order.size() != c.gates.size())
        throw CircuitError("combinational cycle in circuit" +
                           (c.name.empty() ? std::string() : " " + c.name));
    return order;
}

std::vector<uint8_t> eval_plain(const Circuit& c, std::span<const uint8_t> x) {
    if (x.size() != c.input_size())
        throw std::invalid_argument("input length does not match circuit input size");
    std::vector<uint8_t> val(c.wire_count(), 0);
    std::vector<WireId> ins = c.input_order();
    for (size_t i = 0; i < ins.size(); ++i) val[ins[i]] = x[i] & 1;
    for (uint32_t gi : topo_order(c)) {
        const Gate& g = c.gates[gi];
        bool b = gate_arity(g.kind) == 2 ? (val[g.in1] != 0) : false;
        val[g.out] = gate_eval(g.kind, val[g.in0] != 0, b) ? 1 : 0;
    }
    std::vector<uint8_t> y;
    y.reserve(c.outputs.size());
    for (WireId w : c.outputs) y.push_back(val[w]);
    return y;
}

} // namespace gcsim
