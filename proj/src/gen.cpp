#include "gcsim/gen.hpp"

#include <cctype>
#include <random>
#include <stdexcept>

namespace gcsim {

Circuit single_gate(GateKind kind) {
    Circuit c;
    c.name = std::string("gate_") + gate_name(kind);
    for (auto& ch : c.name)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    WireId a = c.intern("a");
    c.evaluator_inputs.push_back(a);
    Gate g{kind, a, 0, 0};
    if (gate_arity(kind) == 2) {
        WireId b = c.intern("b");
        c.evaluator_inputs.push_back(b);
        g.in1 = b;
    }
    g.out = c.intern("y");
    c.gates.push_back(g);
    c.outputs.push_back(g.out);
    return c;
}

Circuit c17() {
    Circuit c;
    c.name = "c17";
    auto in = [&](const char* n) {
        WireId w = c.intern(n);
        c.evaluator_inputs.push_back(w);
        return w;
    };
    WireId w1 = in("1"), w2 = in("2"), w3 = in("3"), w6 = in("6"), w7 = in("7");
    auto nand = [&](WireId a, WireId b, const char* out) {
        WireId o = c.intern(out);
        c.gates.push_back({GateKind::Nand, a, b, o});
        return o;
    };
    WireId w10 = nand(w1, w3, "10");
    WireId w11 = nand(w3, w6, "11");
    WireId w16 = nand(w2, w11, "16");
    WireId w19 = nand(w11, w7, "19");
    c.outputs.push_back(nand(w10, w16, "22"));
    c.outputs.push_back(nand(w16, w19, "23"));
    return c;
}

Circuit adder8() {
    Circuit c;
    c.name = "adder8";
    std::vector<WireId> a(8), b(8);
    for (int i = 0; i < 8; ++i) {
        a[i] = c.intern("a" + std::to_string(i));
        c.evaluator_inputs.push_back(a[i]);
    }
    for (int i = 0; i < 8; ++i) {
        b[i] = c.intern("b" + std::to_string(i));
        c.evaluator_inputs.push_back(b[i]);
    }
    auto gate = [&](GateKind k, WireId x, WireId y, const std::string& out) {
        WireId o = c.intern(out);
        c.gates.push_back({k, x, y, o});
        return o;
    };
    WireId s0 = gate(GateKind::Xor, a[0], b[0], "s0");
    WireId carry = gate(GateKind::And, a[0], b[0], "c1");
    c.outputs.push_back(s0);
    std::vector<WireId> sums{s0};
    for (int i = 1; i < 8; ++i) {
        std::string n = std::to_string(i);
        WireId p = gate(GateKind::Xor, a[i], b[i], "p" + n);
        WireId s = gate(GateKind::Xor, p, carry, "s" + n);
        WireId g = gate(GateKind::And, a[i], b[i], "g" + n);
        WireId t = gate(GateKind::And, p, carry, "t" + n);
        carry = gate(GateKind::Or, t, g, "c" + std::to_string(i + 1));
        sums.push_back(s);
    }
    for (int i = 1; i < 8; ++i) c.outputs.push_back(sums[i]);
    c.outputs.push_back(carry);
    return c;
}

Circuit hamming16() {
    Circuit c;
    c.name = "hamming16";
    std::vector<WireId> a(8), b(8);
    for (int i = 0; i < 8; ++i) {
        a[i] = c.intern("a" + std::to_string(i));
        c.evaluator_inputs.push_back(a[i]);
    }
    for (int i = 0; i < 8; ++i) {
        b[i] = c.intern("b" + std::to_string(i));
        c.evaluator_inputs.push_back(b[i]);
    }
    auto gate = [&](GateKind k, WireId x, WireId y, const std::string& out) {
        WireId o = c.intern(out);
        c.gates.push_back({k, x, y, o});
        return o;
    };
    // bit differences, each XOR spelled with four NANDs
    std::vector<WireId> d(8);
    for (int i = 0; i < 8; ++i) {
        std::string n = std::to_string(i);
        WireId m = gate(GateKind::Nand, a[i], b[i], "m" + n);
        WireId u = gate(GateKind::Nand, a[i], m, "u" + n);
        WireId v = gate(GateKind::Nand, b[i], m, "v" + n);
        d[i] = gate(GateKind::Nand, u, v, "d" + n);
    }
    // carry-save compression of the eight differences into four sum bits and
    // four carry bits; one sum is built without XOR (OR & NAND)
    for (int p = 0; p < 4; ++p) {
        std::string n = std::to_string(p);
        WireId x = d[2 * p], y = d[2 * p + 1];
        WireId s;
        if (p == 3) {
            WireId o = gate(GateKind::Or, x, y, "so" + n);
            WireId q = gate(GateKind::Nand, x, y, "sq" + n);
            s = gate(GateKind::And, o, q, "s" + n);
        } else {
            s = gate(GateKind::Xor, x, y, "s" + n);
        }
        WireId carry = gate(GateKind::And, x, y, "c" + n);
        c.outputs.push_back(s);
        c.outputs.push_back(carry);
    }
    return c;
}

Circuit parity(uint32_t n_inputs) {
    if (n_inputs < 2) throw std::invalid_argument("parity needs at least two inputs");
    Circuit c;
    c.name = "parity" + std::to_string(n_inputs);
    WireId acc = 0;
    for (uint32_t i = 0; i < n_inputs; ++i) {
        WireId w = c.intern("x" + std::to_string(i));
        c.evaluator_inputs.push_back(w);
        if (i == 0) {
            acc = w;
        } else {
            WireId out = c.intern("p" + std::to_string(i));
            c.gates.push_back({GateKind::Xor, acc, w, out});
            acc = out;
        }
    }
    c.outputs.push_back(acc);
    return c;
}

Circuit inverter_chain(uint32_t length) {
    if (length < 1) throw std::invalid_argument("chain needs at least one stage");
    Circuit c;
    c.name = "invchain" + std::to_string(length);
    WireId acc = c.intern("x");
    c.evaluator_inputs.push_back(acc);
    for (uint32_t i = 0; i < length; ++i) {
        WireId out = c.intern("n" + std::to_string(i));
        c.gates.push_back({i % 2 ? GateKind::Buf : GateKind::Not, acc, 0, out});
        acc = out;
    }
    c.outputs.push_back(acc);
    return c;
}

Circuit wide_and(uint32_t n_inputs) {
    if (n_inputs < 2) throw std::invalid_argument("need at least two inputs");
    Circuit c;
    c.name = "and" + std::to_string(n_inputs);
    WireId acc = 0;
    for (uint32_t i = 0; i < n_inputs; ++i) {
        WireId w = c.intern("x" + std::to_string(i));
        c.evaluator_inputs.push_back(w);
        if (i == 0) {
            acc = w;
        } else {
            WireId out = c.intern("a" + std::to_string(i));
            c.gates.push_back({GateKind::And, acc, w, out});
            acc = out;
        }
    }
    c.outputs.push_back(acc);
    return c;
}

Circuit random_dag(uint32_t n_gates, uint32_t n_inputs, uint32_t n_outputs, uint64_t seed,
                   double free_fraction, uint32_t window) {
    if (n_inputs < 2 || n_gates < n_outputs || n_outputs < 1 || window < 2)
        throw std::invalid_argument("bad random dag shape");
    Circuit c;
    c.name = "dag" + std::to_string(n_gates) + "_s" + std::to_string(seed);
    std::mt19937_64 rng(seed);
    std::vector<WireId> avail;
    for (uint32_t i = 0; i < n_inputs; ++i) {
        WireId w = c.intern("x" + std::to_string(i));
        c.evaluator_inputs.push_back(w);
        avail.push_back(w);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto pick = [&]() {
        uint32_t span = std::min<uint32_t>(window, static_cast<uint32_t>(avail.size()));
        uint32_t back = static_cast<uint32_t>(rng() % span);
        return avail[avail.size() - 1 - back];
    };
    for (uint32_t g = 0; g < n_gates; ++g) {
        GateKind kind;
        if (unit(rng) < free_fraction) {
            double p = unit(rng);
            kind = p < 0.6   ? GateKind::Xor
                   : p < 0.8 ? GateKind::Xnor
                   : p < 0.9 ? GateKind::Not
                             : GateKind::Buf;
        } else {
            static const GateKind table[] = {GateKind::And, GateKind::Or, GateKind::Nand,
                                             GateKind::Nor};
            kind = table[rng() % 4];
        }
        Gate gate{kind, pick(), 0, c.intern("g" + std::to_string(g))};
        if (gate_arity(kind) == 2) gate.in1 = pick();
        c.gates.push_back(gate);
        avail.push_back(gate.out);
    }
    for (uint32_t i = n_gates - n_outputs; i < n_gates; ++i)
        c.outputs.push_back(c.gates[i].out);
    return c;
}

std::vector<std::pair<std::string, Circuit>> benchmark_suite() {
    std::vector<std::pair<std::string, Circuit>> suite;
    for (int k = 0; k < kGateKindCount; ++k) {
        Circuit g = single_gate(static_cast<GateKind>(k));
        std::string name = g.name;
        suite.emplace_back(name, std::move(g));
    }
    suite.emplace_back("c17", c17());
    suite.emplace_back("adder8", adder8());
    suite.emplace_back("hamming16", hamming16());
    suite.emplace_back("parity16", parity(16));
    suite.emplace_back("parity64", parity(64));
    suite.emplace_back("invchain12", inverter_chain(12));
    suite.emplace_back("and16", wide_and(16));
    suite.emplace_back("rand40", random_dag(40, 8, 4, 11));
    suite.emplace_back("rand64", random_dag(64, 12, 6, 22));
    suite.emplace_back("rand128", random_dag(128, 16, 8, 33));
    suite.emplace_back("randfree96", random_dag(96, 10, 5, 44, 0.7));
    suite.emplace_back("randtab80", random_dag(80, 10, 5, 55, 0.0));
    suite.emplace_back("dag6000", random_dag(6000, 64, 32, 4242, 0.3, 200));
    return suite;
}

Circuit suite_circuit(const std::string& name) {
    for (auto& [n, c] : benchmark_suite())
        if (n == name) return std::move(c);
    throw std::invalid_argument("unknown circuit name: " + name);
}

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (auto& [n, c] : benchmark_suite()) names.push_back(n);
    return names;
}

} // namespace gcsim
