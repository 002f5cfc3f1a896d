#include "gcsim/bench.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gcsim/errors.hpp"

namespace gcsim {
namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits "NAME(arg1, arg2)" into name and args; returns false if the line
// does not have that shape.
bool split_call(const std::string& s, std::string& fn, std::vector<std::string>& args,
                int line) {
    size_t open = s.find('(');
    if (open == std::string::npos) return false;
    size_t close = s.rfind(')');
    if (close == std::string::npos || close < open)
        throw ParseError("unbalanced parentheses", line);
    if (!trim(s.substr(close + 1)).empty())
        throw ParseError("trailing text after ')'", line);
    fn = trim(s.substr(0, open));
    args.clear();
    std::string inner = s.substr(open + 1, close - open - 1);
    size_t pos = 0;
    while (true) {
        size_t comma = inner.find(',', pos);
        std::string piece = trim(comma == std::string::npos ? inner.substr(pos)
                                                            : inner.substr(pos, comma - pos));
        if (piece.empty()) {
            if (args.empty() && comma == std::string::npos) break; // empty arg list
            throw ParseError("empty argument", line);
        }
        args.push_back(piece);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return true;
}

} // namespace

Circuit parse_bench(const std::string& text, const std::string& name) {
    Circuit c;
    c.name = name;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    uint32_t temp_id = 0;

    auto fresh_wire = [&](const std::string& base) {
        std::string candidate;
        do {
            candidate = base + "$" + std::to_string(temp_id++);
        } while (c.find_wire(candidate));
        return c.intern(candidate);
    };

    while (std::getline(in, raw)) {
        ++lineno;
        size_t hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::string fn;
            std::vector<std::string> args;
            if (!split_call(line, fn, args, lineno))
                throw ParseError("expected INPUT/OUTPUT declaration or assignment", lineno);
            if (args.size() != 1) throw ParseError(fn + " takes one wire", lineno);
            std::string decl = fn;
            for (char& ch : decl) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            if (decl == "INPUT") {
                WireId w = c.intern(args[0]);
                for (WireId ex : c.evaluator_inputs)
                    if (ex == w) throw ParseError("duplicate INPUT " + args[0], lineno);
                c.evaluator_inputs.push_back(w);
            } else if (decl == "OUTPUT") {
                c.outputs.push_back(c.intern(args[0]));
            } else {
                throw ParseError("unknown declaration " + fn, lineno);
            }
            continue;
        }

        std::string lhs = trim(line.substr(0, eq));
        if (lhs.empty()) throw ParseError("missing wire name before '='", lineno);
        std::string fn;
        std::vector<std::string> args;
        if (!split_call(trim(line.substr(eq + 1)), fn, args, lineno))
            throw ParseError("expected KIND(wire, ...) after '='", lineno);
        auto kind = gate_kind_from_name(fn);
        if (!kind) throw ParseError("unknown gate kind " + fn, lineno);

        int arity = gate_arity(*kind);
        if (arity == 1) {
            if (args.size() != 1)
                throw ParseError(std::string(gate_name(*kind)) + " takes one input", lineno);
            c.gates.push_back({*kind, c.intern(args[0]), 0, c.intern(lhs)});
            continue;
        }
        if (args.size() < 2)
            throw ParseError(std::string(gate_name(*kind)) + " needs at least two inputs", lineno);

        // n-ary lowering: fold with the non-inverting base kind, then apply
        // the (possibly inverting) kind to the last pair.
        GateKind base = *kind;
        if (base == GateKind::Nand) base = GateKind::And;
        if (base == GateKind::Nor) base = GateKind::Or;
        if (base == GateKind::Xnor) base = GateKind::Xor;

        WireId acc = c.intern(args[0]);
        for (size_t i = 1; i + 1 < args.size(); ++i) {
            WireId t = fresh_wire(lhs);
            c.gates.push_back({base, acc, c.intern(args[i]), t});
            acc = t;
        }
        c.gates.push_back({*kind, acc, c.intern(args.back()), c.intern(lhs)});
    }

    try {
        c.validate();
    } catch (const CircuitError& e) {
        throw ParseError(e.what());
    }
    return c;
}

Circuit load_bench_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    size_t slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    if (dot != std::string::npos) base = base.substr(0, dot);
    return parse_bench(ss.str(), base);
}

std::string emit_bench(const Circuit& c) {
    std::ostringstream out;
    if (!c.name.empty()) out << "# " << c.name << "\n";
    for (WireId w : c.garbler_inputs) out << "INPUT(" << c.wire_names[w] << ")\n";
    for (WireId w : c.evaluator_inputs) out << "INPUT(" << c.wire_names[w] << ")\n";
    for (WireId w : c.outputs) out << "OUTPUT(" << c.wire_names[w] << ")\n";
    for (uint32_t gi : topo_order(c)) {
        const Gate& g = c.gates[gi];
        out << c.wire_names[g.out] << " = " << gate_name(g.kind) << "("
            << c.wire_names[g.in0];
        if (gate_arity(g.kind) == 2) out << ", " << c.wire_names[g.in1];
        out << ")\n";
    }
    return out.str();
}

} // namespace gcsim
