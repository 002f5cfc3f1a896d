// gcsim: garbled netlist simulator front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "gcsim/bench.hpp"
#include "gcsim/circuit.hpp"
#include "gcsim/costmodel.hpp"
#include "gcsim/crypto.hpp"
#include "gcsim/errors.hpp"
#include "gcsim/garble.hpp"
#include "gcsim/gen.hpp"
#include "gcsim/protocol.hpp"
#include "gcsim/selector.hpp"
#include "gcsim/verilog.hpp"
#include "gcsim/wirefmt.hpp"

using nlohmann::json;
using namespace gcsim;

namespace {

bool log_enabled() {
    static const bool on = [] {
        const char* v = std::getenv("GCSIM_LOG");
        return v && *v && std::string(v) != "off" && std::string(v) != "0";
    }();
    return on;
}

void log_line(const std::string& msg) {
    if (log_enabled()) std::cerr << "[gcsim] " << msg << "\n";
}

std::vector<uint8_t> parse_bits(const std::string& s) {
    std::vector<uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("input bits must be 0 or 1");
        bits.push_back(static_cast<uint8_t>(c - '0'));
    }
    return bits;
}

std::string bits_to_string(std::span<const uint8_t> bits) {
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::array<uint8_t, 32> parse_seed(const std::string& hex) {
    if (hex.size() != 64) throw std::invalid_argument("seed must be 64 hex characters");
    std::array<uint8_t, 32> seed{};
    for (size_t i = 0; i < 32; ++i) {
        auto nib = [&](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            throw std::invalid_argument("seed must be hex");
        };
        seed[i] = static_cast<uint8_t>(nib(hex[2 * i]) * 16 + nib(hex[2 * i + 1]));
    }
    return seed;
}

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= list.size()) {
        size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        if (comma > pos) out.push_back(list.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

Circuit load_circuit(const std::string& path, bool verilog, const std::string& garbler_list) {
    Circuit c = verilog ? load_verilog_file(path) : load_bench_file(path);
    if (!garbler_list.empty()) c.assign_garbler_inputs(split_names(garbler_list));
    return c;
}

json stats_json(const CircuitStats& s) {
    json hist;
    for (int k = 0; k < kGateKindCount; ++k)
        hist[gate_name(static_cast<GateKind>(k))] = s.kind_histogram[k];
    return {{"name", s.name},
            {"gates", s.gate_count},
            {"xor", s.xor_count},
            {"nonfree", s.nonfree_count},
            {"inputs", s.input_size},
            {"outputs", s.output_size},
            {"instructions", s.instruction_count},
            {"histogram", hist}};
}

void write_file(const std::string& path, std::span<const uint8_t> data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string strip_ext(const std::string& path) {
    size_t slash = path.find_last_of('/');
    size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

Mode parse_mode(const std::string& m) {
    if (m == "max") return Mode::MaxPerformance;
    if (m == "stream") return Mode::ResourceEfficient;
    throw std::invalid_argument("mode must be 'max' or 'stream'");
}

struct SessionFlags {
    std::string mode = "max";
    uint32_t batch = 4;
    bool mask = false;
    bool dealer = false;
    std::string seed;
};

void add_session_flags(CLI::App* cmd, SessionFlags& f) {
    cmd->add_option("--mode", f.mode, "session shape: max or stream");
    cmd->add_option("--batch", f.batch, "tables per instruction (1..4, stream mode)");
    cmd->add_flag("--mask", f.mask, "mask outputs and tag them");
    cmd->add_flag("--dealer-ot", f.dealer,
                  "deliver transfers by plaintext choice (insecure, for benchmarks)");
}

SessionConfig session_config(const SessionFlags& f) {
    SessionConfig cfg;
    cfg.mode = parse_mode(f.mode);
    cfg.batch_size = f.batch;
    cfg.mask_outputs = f.mask;
    cfg.dealer_ot = f.dealer;
    if (!f.seed.empty()) cfg.seed = parse_seed(f.seed);
    return cfg;
}

json transcript_json(const Transcript& t) {
    return {{"messages", t.messages.size()},
            {"bytes_sent", t.bytes_sent()},
            {"bytes_received", t.bytes_received()},
            {"ot_interactions", t.ot_interactions}};
}

int cmd_parse(const std::string& file, bool verilog, const std::string& garbler_list) {
    Circuit c = load_circuit(file, verilog, garbler_list);
    std::cout << stats_json(circuit_stats(c)).dump(2) << "\n";
    return 0;
}

int cmd_gen(const std::string& name, const std::string& out, bool list) {
    if (list) {
        for (const auto& n : suite_names()) std::cout << n << "\n";
        return 0;
    }
    Circuit c = suite_circuit(name);
    std::string text = emit_bench(c);
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
    return 0;
}

int cmd_garble(const std::string& file, bool verilog, const std::string& garbler_list,
               const std::string& seed_hex, std::string out_base) {
    Circuit c = load_circuit(file, verilog, garbler_list);
    std::array<uint8_t, 32> seed{};
    if (seed_hex.empty())
        SystemRng().fill(seed.data(), seed.size());
    else
        seed = parse_seed(seed_hex);
    GarbleArtifacts art = garble_full(c, seed);
    if (out_base.empty()) out_base = strip_ext(file);

    auto blob = serialize_garbled(art.f);
    write_file(out_base + ".gc", blob);

    ByteWriter labels;
    labels.u32(static_cast<uint32_t>(art.e.labels.size()));
    for (const LabelPair& p : art.e.labels) {
        labels.block(p.l0);
        labels.block(p.l1);
    }
    write_file(out_base + ".labels", labels.buf);

    ByteWriter dec;
    dec.u32(static_cast<uint32_t>(art.d.bits.size()));
    dec.bytes(art.d.bits.data(), art.d.bits.size());
    write_file(out_base + ".decode", dec.buf);

    std::cout << json{{"circuit", c.name},
                      {"garbled_file", out_base + ".gc"},
                      {"garbled_bytes", blob.size()},
                      {"tables", art.f.tables.size()},
                      {"table_bytes", art.f.table_bytes()}}
                     .dump(2)
              << "\n";
    return 0;
}

int cmd_simulate(const std::string& file, bool verilog, const std::string& garbler_list,
                 const std::string& x_str, const SessionFlags& flags, bool as_json) {
    Circuit c = load_circuit(file, verilog, garbler_list);
    SessionConfig cfg = session_config(flags);
    std::vector<uint8_t> x = parse_bits(x_str);
    if (x.size() != c.input_size())
        throw std::invalid_argument("expected " + std::to_string(c.input_size()) +
                                    " input bits, got " + std::to_string(x.size()));
    std::span<const uint8_t> x_g(x.data(), c.garbler_inputs.size());
    std::span<const uint8_t> x_e(x.data() + c.garbler_inputs.size(),
                                 c.evaluator_inputs.size());

    auto [end_g, end_e] = LoopbackChannel::make();
    GarblerResult gres;
    std::exception_ptr gerr;
    std::thread garbler([&] {
        auto ch = std::move(end_g); // closes the pipe when this thread exits
        try {
            gres = run_garbler(c, x_g, cfg, *ch);
        } catch (...) {
            gerr = std::current_exception();
        }
    });
    EvaluatorResult eres;
    std::exception_ptr eerr;
    try {
        eres = run_evaluator(x_e, cfg, *end_e);
    } catch (...) {
        eerr = std::current_exception();
    }
    end_e.reset(); // unblock the peer if we bailed early
    garbler.join();
    if (eerr) std::rethrow_exception(eerr);
    if (gerr) std::rethrow_exception(gerr);

    json report{{"circuit", c.name},
                {"mode", mode_name(cfg.mode)},
                {"outputs", bits_to_string(eres.outputs)},
                {"peak_live_labels", eres.peak_live_labels},
                {"transcript", transcript_json(eres.transcript)}};
    if (cfg.mask_outputs) {
        const OutputMask& m = *gres.mask;
        std::vector<uint8_t> y = unmask_verify(eres.outputs, *eres.tag, m.pad, m.key);
        report["masked"] = bits_to_string(eres.outputs);
        report["tag"] = eres.tag->hex();
        report["outputs"] = bits_to_string(y);
    }
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << report["outputs"].get<std::string>() << "\n";
    return 0;
}

int cmd_listen(const std::string& file, bool verilog, const std::string& garbler_list,
               const std::string& x_str, uint16_t port, const SessionFlags& flags,
               bool deterministic, bool as_json) {
    if (!flags.seed.empty() && !deterministic)
        throw std::invalid_argument("--seed in a networked run requires --deterministic");
    Circuit c = load_circuit(file, verilog, garbler_list);
    SessionConfig cfg = session_config(flags);
    std::vector<uint8_t> x = parse_bits(x_str);

    TcpListener listener(port);
    log_line("listening on port " + std::to_string(listener.port()));
    TcpChannel chan = listener.accept_one();
    log_line("evaluator connected");
    GarblerResult res = run_garbler(c, x, cfg, chan);

    json report{{"role", "garbler"},
                {"circuit", c.name},
                {"mode", mode_name(cfg.mode)},
                {"transcript", transcript_json(res.transcript)}};
    if (res.mask) {
        report["mask"] = {{"pad", bits_to_string(res.mask->pad)},
                          {"key_r", res.mask->key.r.hex()},
                          {"key_s", res.mask->key.s.hex()},
                          {"tag", res.mask->tag.hex()}};
    }
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << "session complete: " << res.transcript.ot_interactions
                  << " transfer instances\n";
    return 0;
}

int cmd_connect(const std::string& host, uint16_t port, const std::string& x_str,
                const SessionFlags& flags, bool as_json) {
    SessionConfig cfg = session_config(flags);
    if (cfg.seed) throw std::invalid_argument("only the garbler takes a seed");
    std::vector<uint8_t> x = parse_bits(x_str);
    log_line("connecting to " + host + ":" + std::to_string(port));
    TcpChannel chan = TcpChannel::connect(host, port);
    EvaluatorResult res = run_evaluator(x, cfg, chan);

    json report{{"role", "evaluator"},
                {"mode", mode_name(cfg.mode)},
                {"outputs", bits_to_string(res.outputs)},
                {"peak_live_labels", res.peak_live_labels},
                {"transcript", transcript_json(res.transcript)}};
    if (res.tag) report["tag"] = res.tag->hex();
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << bits_to_string(res.outputs) << "\n";
    return 0;
}

int cmd_combine(const std::vector<std::string>& files, const std::string& out,
                const std::string& mode_str, bool as_json) {
    std::vector<Circuit> members;
    for (const auto& f : files) members.push_back(load_bench_file(f));
    CombinedCircuit cc = combine(members);
    write_text(out, emit_bench(cc.circuit));
    std::string map_path = strip_ext(out) + ".map.json";
    write_text(map_path, member_map_json(cc).dump(2) + "\n");

    std::vector<CircuitStats> member_stats;
    for (const Circuit& m : members) member_stats.push_back(circuit_stats(m));
    SelectorSavings sav =
        selector_savings(member_stats, circuit_stats(cc.circuit), parse_mode(mode_str));
    json report{{"combined_file", out},
                {"member_map", map_path},
                {"stats", stats_json(circuit_stats(cc.circuit))},
                {"savings", savings_json(sav)}};
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << "wrote " << out << " and " << map_path << "\n"
                  << report["savings"].dump(2) << "\n";
    return 0;
}

int cmd_estimate(const std::string& file, bool verilog, const std::string& garbler_list,
                 uint64_t inst, uint64_t nonfree, uint32_t io, const std::string& mode_str,
                 const std::string& constants_file, bool as_json) {
    CostConstants k;
    if (!constants_file.empty()) {
        std::ifstream in(constants_file);
        if (!in) throw std::invalid_argument("cannot open " + constants_file);
        k = cost_constants_from_json(json::parse(in));
    }
    CircuitStats s;
    if (!file.empty()) {
        s = circuit_stats(load_circuit(file, verilog, garbler_list));
    } else {
        if (inst == 0 && nonfree == 0)
            throw std::invalid_argument("give a netlist or --inst/--nonfree");
        s.name = "synthetic";
        s.nonfree_count = nonfree;
        s.instruction_count = inst ? inst : (nonfree + 3) / 4;
        s.gate_count = nonfree;
        s.input_size = io;
    }
    if (inst) s.instruction_count = inst; // external override wins
    CostReport r = estimate(s, parse_mode(mode_str), k);
    if (as_json)
        std::cout << cost_report_json(r).dump(2) << "\n";
    else
        std::cout << cost_report_table(r);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-party garbled netlist simulator"};
    app.require_subcommand(1);

    std::string file, out, x_str, host = "127.0.0.1", garbler_list, mode_str = "max";
    std::string constants_file, name;
    std::vector<std::string> files;
    bool verilog = false, as_json = false, deterministic = false, list = false;
    uint16_t port = 0;
    uint64_t inst = 0, nonfree = 0;
    uint32_t io = 0;
    SessionFlags flags;

    auto* parse_cmd = app.add_subcommand("parse", "parse a netlist and report stats");
    parse_cmd->add_option("file", file)->required();
    parse_cmd->add_flag("--verilog", verilog, "treat the input as Verilog");
    parse_cmd->add_option("--garbler-inputs", garbler_list, "comma-separated wire names");
    parse_cmd->add_flag("--json", as_json);

    auto* gen_cmd = app.add_subcommand("gen", "emit a built-in benchmark as BENCH");
    gen_cmd->add_option("name", name);
    gen_cmd->add_option("-o,--output", out);
    gen_cmd->add_flag("--list", list, "list available circuits");

    auto* garble_cmd = app.add_subcommand("garble", "garble a netlist to files");
    garble_cmd->add_option("file", file)->required();
    garble_cmd->add_flag("--verilog", verilog);
    garble_cmd->add_option("--garbler-inputs", garbler_list);
    garble_cmd->add_option("--seed", flags.seed, "64 hex chars; fresh randomness if absent");
    garble_cmd->add_option("-o,--output", out, "output base path");

    auto* sim_cmd = app.add_subcommand("simulate", "run both parties over a local pipe");
    sim_cmd->add_option("file", file)->required();
    sim_cmd->add_flag("--verilog", verilog);
    sim_cmd->add_option("--garbler-inputs", garbler_list);
    sim_cmd->add_option("-x,--input", x_str, "all input bits, garbler's first")->required();
    add_session_flags(sim_cmd, flags);
    sim_cmd->add_option("--seed", flags.seed);
    sim_cmd->add_flag("--json", as_json);

    auto* listen_cmd = app.add_subcommand("listen", "serve one session as the garbler");
    listen_cmd->add_option("file", file)->required();
    listen_cmd->add_flag("--verilog", verilog);
    listen_cmd->add_option("--garbler-inputs", garbler_list);
    listen_cmd->add_option("-x,--input", x_str, "garbler input bits");
    listen_cmd->add_option("--port", port)->required();
    add_session_flags(listen_cmd, flags);
    listen_cmd->add_option("--seed", flags.seed);
    listen_cmd->add_flag("--deterministic", deterministic,
                         "acknowledge a fixed seed over the network");
    listen_cmd->add_flag("--json", as_json);

    auto* connect_cmd = app.add_subcommand("connect", "join a session as the evaluator");
    connect_cmd->add_option("--host", host);
    connect_cmd->add_option("--port", port)->required();
    connect_cmd->add_option("-x,--input", x_str, "evaluator input bits")->required();
    add_session_flags(connect_cmd, flags);
    connect_cmd->add_flag("--json", as_json);

    auto* combine_cmd = app.add_subcommand("combine", "merge circuits behind a selector");
    combine_cmd->add_option("files", files)->required()->expected(-2);
    combine_cmd->add_option("-o,--output", out)->required();
    combine_cmd->add_option("--mode", mode_str);
    combine_cmd->add_flag("--json", as_json);

    auto* est_cmd = app.add_subcommand("estimate", "analytic session cost");
    est_cmd->add_option("file", file);
    est_cmd->add_flag("--verilog", verilog);
    est_cmd->add_option("--garbler-inputs", garbler_list);
    est_cmd->add_option("--inst", inst, "externally supplied instruction count");
    est_cmd->add_option("--nonfree", nonfree, "externally supplied table-gate count");
    est_cmd->add_option("--io", io, "externally supplied input+output bit count");
    est_cmd->add_option("--mode", mode_str);
    est_cmd->add_option("--constants", constants_file, "JSON overrides for cost constants");
    est_cmd->add_flag("--json", as_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (parse_cmd->parsed()) return cmd_parse(file, verilog, garbler_list);
        if (gen_cmd->parsed()) return cmd_gen(name, out, list);
        if (garble_cmd->parsed()) return cmd_garble(file, verilog, garbler_list, flags.seed, out);
        if (sim_cmd->parsed()) return cmd_simulate(file, verilog, garbler_list, x_str, flags, as_json);
        if (listen_cmd->parsed())
            return cmd_listen(file, verilog, garbler_list, x_str, port, flags, deterministic,
                              as_json);
        if (connect_cmd->parsed()) return cmd_connect(host, port, x_str, flags, as_json);
        if (combine_cmd->parsed()) return cmd_combine(files, out, mode_str, as_json);
        if (est_cmd->parsed())
            return cmd_estimate(file, verilog, garbler_list, inst, nonfree, io, mode_str,
                                constants_file, as_json);
    } catch (const MacError& e) {
        std::cerr << json{{"error", "mac"}, {"message", e.what()}}.dump() << "\n";
        return 4;
    } catch (const ProtocolError& e) {
        std::cerr << json{{"error", "protocol"}, {"message", e.what()}}.dump() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << json{{"error", "parse"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const CircuitError& e) {
        std::cerr << json{{"error", "circuit"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
