#include "gcsim/verilog.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gcsim/errors.hpp"

namespace gcsim {
namespace {

enum class Tok : uint8_t { Ident, Number, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    Token next() {
        skip_space();
        if (pos_ >= s_.size()) return {Tok::End, "", line_};
        char c = s_[pos_];
        int line = line_;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t b = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                    s_[pos_] == '$'))
                ++pos_;
            return {Tok::Ident, s_.substr(b, pos_ - b), line};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t b = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '\''))
                ++pos_;
            return {Tok::Number, s_.substr(b, pos_ - b), line};
        }
        if (std::string("()[];,=&|^~").find(c) != std::string::npos) {
            ++pos_;
            return {Tok::Sym, std::string(1, c), line};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line);
    }

private:
    void skip_space() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else if (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '*') {
                int line = line_;
                pos_ += 2;
                while (pos_ + 1 < s_.size() && !(s_[pos_] == '*' && s_[pos_ + 1] == '/')) {
                    if (s_[pos_] == '\n') ++line_;
                    ++pos_;
                }
                if (pos_ + 1 >= s_.size()) throw ParseError("unterminated comment", line);
                pos_ += 2;
            } else {
                break;
            }
        }
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1;
};

class VerilogParser {
public:
    explicit VerilogParser(const std::string& text, const std::string& fallback)
        : lex_(text) {
        cur_ = lex_.next();
        circuit_.name = fallback;
    }

    Circuit run() {
        expect_kw("module");
        if (cur_.kind != Tok::Ident) fail("expected module name");
        circuit_.name = cur_.text;
        advance();
        if (is_sym("(")) {
            advance();
            if (!is_sym(")")) {
                ports_.push_back(take_ident("port name"));
                while (is_sym(",")) {
                    advance();
                    ports_.push_back(take_ident("port name"));
                }
            }
            expect_sym(")");
        }
        expect_sym(";");
        while (!(cur_.kind == Tok::Ident && cur_.text == "endmodule")) {
            if (cur_.kind == Tok::End) fail("missing endmodule");
            item();
        }
        advance();
        if (cur_.kind != Tok::End) fail("text after endmodule");
        finish();
        return std::move(circuit_);
    }

private:
    void advance() { cur_ = lex_.next(); }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.line); }
    bool is_sym(const char* s) const { return cur_.kind == Tok::Sym && cur_.text == s; }
    void expect_sym(const char* s) {
        if (!is_sym(s)) fail(std::string("expected '") + s + "'");
        advance();
    }
    void expect_kw(const char* kw) {
        if (!(cur_.kind == Tok::Ident && cur_.text == kw))
            fail(std::string("expected '") + kw + "'");
        advance();
    }
    std::string take_ident(const char* what) {
        if (cur_.kind != Tok::Ident) fail(std::string("expected ") + what);
        std::string t = cur_.text;
        advance();
        return t;
    }

    void item() {
        if (cur_.kind != Tok::Ident) fail("expected declaration or assign");
        std::string kw = cur_.text;
        if (kw == "input" || kw == "output" || kw == "wire") {
            advance();
            if (is_sym("[")) fail("vector declarations are not supported");
            declare(kw, take_ident("wire name"));
            while (is_sym(",")) {
                advance();
                declare(kw, take_ident("wire name"));
            }
            expect_sym(";");
        } else if (kw == "assign") {
            advance();
            int line = cur_.line;
            std::string lhs = take_ident("wire name");
            expect_sym("=");
            size_t gates_before = circuit_.gates.size();
            WireId rhs = parse_or();
            expect_sym(";");
            lower_assign(lhs, rhs, gates_before, line);
        } else {
            fail("unsupported construct '" + kw + "'");
        }
    }

    void declare(const std::string& kw, const std::string& name) {
        if (declared_.count(name)) fail("wire '" + name + "' declared twice");
        declared_.insert(name);
        WireId w = circuit_.intern(name);
        if (kw == "input")
            circuit_.evaluator_inputs.push_back(w);
        else if (kw == "output")
            circuit_.outputs.push_back(w);
    }

    WireId use_wire(const std::string& name, int line) {
        if (!declared_.count(name)) throw ParseError("undeclared wire '" + name + "'", line);
        return circuit_.intern(name);
    }

    WireId fresh_temp() { return circuit_.intern("$t" + std::to_string(temp_id_++)); }

    WireId emit(GateKind k, WireId a, WireId b) {
        WireId out = fresh_temp();
        circuit_.gates.push_back({k, a, b, out});
        return out;
    }

    // precedence (low to high): | then ^ then &, with ~ and () tightest
    WireId parse_or() {
        WireId a = parse_xor();
        while (is_sym("|")) {
            advance();
            a = emit(GateKind::Or, a, parse_xor());
        }
        return a;
    }
    WireId parse_xor() {
        WireId a = parse_and();
        while (is_sym("^")) {
            advance();
            a = emit(GateKind::Xor, a, parse_and());
        }
        return a;
    }
    WireId parse_and() {
        WireId a = parse_unary();
        while (is_sym("&")) {
            advance();
            a = emit(GateKind::And, a, parse_unary());
        }
        return a;
    }
    WireId parse_unary() {
        if (is_sym("~")) {
            advance();
            return emit(GateKind::Not, parse_unary(), 0);
        }
        if (is_sym("(")) {
            advance();
            WireId w = parse_or();
            expect_sym(")");
            return w;
        }
        if (cur_.kind == Tok::Number) fail("literals are not supported");
        int line = cur_.line;
        return use_wire(take_ident("wire or '~' or '('"), line);
    }

    void lower_assign(const std::string& lhs, WireId rhs, size_t gates_before, int line) {
        if (!declared_.count(lhs)) throw ParseError("assignment to undeclared wire '" + lhs + "'", line);
        WireId target = circuit_.intern(lhs);
        for (WireId w : circuit_.evaluator_inputs)
            if (w == target) throw ParseError("assignment to input '" + lhs + "'", line);
        if (assigned_.count(lhs)) throw ParseError("wire '" + lhs + "' assigned twice", line);
        assigned_.insert(lhs);
        // the expression root is the last gate emitted for this RHS, if any;
        // a bare identifier degenerates to a buffer
        if (circuit_.gates.size() > gates_before && circuit_.gates.back().out == rhs) {
            circuit_.gates.back().out = target;
        } else {
            circuit_.gates.push_back({GateKind::Buf, rhs, 0, target});
        }
    }

    void finish() {
        for (const auto& p : ports_)
            if (!declared_.count(p))
                throw ParseError("port '" + p + "' has no direction declaration");
        for (WireId w : circuit_.outputs)
            if (!assigned_.count(circuit_.wire_names[w]))
                throw ParseError("output '" + circuit_.wire_names[w] + "' is never assigned");
        try {
            circuit_.validate();
        } catch (const CircuitError& e) {
            throw ParseError(e.what());
        }
    }

    Lexer lex_;
    Token cur_;
    Circuit circuit_;
    std::vector<std::string> ports_;
    std::unordered_set<std::string> declared_;
    std::unordered_set<std::string> assigned_;
    uint32_t temp_id_ = 0;
};

} // namespace

Circuit parse_verilog(const std::string& text, const std::string& fallback_name) {
    return VerilogParser(text, fallback_name).run();
}

Circuit load_verilog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_verilog(ss.str(), path);
}

} // namespace gcsim
