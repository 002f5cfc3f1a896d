#include "gcsim/protocol.hpp"

#include <algorithm>
#include <unordered_set>

#include "gcsim/crypto.hpp"
#include "gcsim/errors.hpp"
#include "gcsim/ot.hpp"
#include "gcsim/wirefmt.hpp"

namespace gcsim {

const char* mode_name(Mode m) {
    return m == Mode::MaxPerformance ? "max-performance" : "resource-efficient";
}

uint64_t ot_count(const CircuitStats& s, Mode mode) {
    uint64_t io = static_cast<uint64_t>(s.input_size) + s.output_size;
    return mode == Mode::MaxPerformance ? io : io + s.instruction_count;
}

std::pair<std::vector<uint8_t>, Block> mask_output_bits(std::span<const uint8_t> y,
                                                        std::span<const uint8_t> pad,
                                                        const MacKey& key) {
    if (y.size() != pad.size()) throw std::invalid_argument("pad length mismatch");
    std::vector<uint8_t> masked(y.size());
    for (size_t i = 0; i < y.size(); ++i) masked[i] = (y[i] ^ pad[i]) & 1;
    return {masked, mac_tag(key, masked)};
}

std::vector<uint8_t> unmask_verify(std::span<const uint8_t> masked, Block tag,
                                   std::span<const uint8_t> pad, const MacKey& key) {
    if (masked.size() != pad.size()) throw std::invalid_argument("pad length mismatch");
    if (!mac_verify(key, masked, tag)) throw MacError("output tag verification failed");
    std::vector<uint8_t> y(masked.size());
    for (size_t i = 0; i < y.size(); ++i) y[i] = (masked[i] ^ pad[i]) & 1;
    return y;
}

// --- planning ---

namespace {

std::vector<uint32_t> sym_diff(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

uint32_t pop_ready(std::vector<uint32_t>& ready, Rng* rng) {
    size_t pick = 0;
    if (rng) {
        pick = static_cast<size_t>(rng->uniform_below(ready.size()));
    } else {
        pick = static_cast<size_t>(
            std::min_element(ready.begin(), ready.end()) - ready.begin());
    }
    uint32_t t = ready[pick];
    ready[pick] = ready.back();
    ready.pop_back();
    return t;
}

} // namespace

InstructionPlan plan_instructions(const GarbledCircuit& f, uint32_t batch_size,
                                  Rng* order_rng) {
    if (batch_size < 1 || batch_size > kMaxBatchSize)
        throw std::invalid_argument("batch size must be between 1 and 4");
    const uint32_t n_in = f.input_size();
    const uint32_t n_tab = static_cast<uint32_t>(f.tables.size());

    InstructionPlan plan;
    plan.input_slots = n_in;

    // slot sets per wire; free gates fold by symmetric difference
    std::vector<std::vector<uint32_t>> sets(f.wire_count);
    {
        uint32_t slot = 0;
        for (WireId w : f.garbler_inputs) sets[w] = {slot++};
        for (WireId w : f.evaluator_inputs) sets[w] = {slot++};
    }
    std::vector<std::vector<uint32_t>> in0(n_tab), in1(n_tab);
    std::vector<WireId> table_out(n_tab);
    for (const EvalGate& g : f.gates) {
        if (g.is_table) {
            in0[g.table_index] = sets[g.in0];
            in1[g.table_index] = sets[g.in1];
            table_out[g.table_index] = g.out;
            sets[g.out] = {n_in + g.table_index};
        } else {
            sets[g.out] = g.n_in == 2 ? sym_diff(sets[g.in0], sets[g.in1]) : sets[g.in0];
        }
    }
    plan.output_slots.reserve(f.outputs.size());
    for (WireId w : f.outputs) plan.output_slots.push_back(sets[w]);

    // table-level dependencies
    std::vector<std::vector<uint32_t>> succ(n_tab);
    std::vector<uint32_t> pending(n_tab, 0);
    for (uint32_t t = 0; t < n_tab; ++t) {
        for (const auto* side : {&in0[t], &in1[t]})
            for (uint32_t s : *side)
                if (s >= n_in) {
                    succ[s - n_in].push_back(t);
                    pending[t]++;
                }
    }

    // tables driving an output wire run last, together with everything that
    // depends on them
    std::unordered_set<WireId> out_wires(f.outputs.begin(), f.outputs.end());
    std::vector<uint8_t> late(n_tab, 0);
    std::vector<uint32_t> frontier;
    for (uint32_t t = 0; t < n_tab; ++t)
        if (out_wires.count(table_out[t])) {
            late[t] = 1;
            frontier.push_back(t);
        }
    while (!frontier.empty()) {
        uint32_t t = frontier.back();
        frontier.pop_back();
        for (uint32_t u : succ[t])
            if (!late[u]) {
                late[u] = 1;
                frontier.push_back(u);
            }
    }

    std::vector<uint32_t> order;
    order.reserve(n_tab);
    std::vector<uint32_t> ready, deferred;
    for (uint32_t t = 0; t < n_tab; ++t)
        if (pending[t] == 0) (late[t] ? deferred : ready).push_back(t);
    for (int phase = 0; phase < 2; ++phase) {
        if (phase == 1) ready.swap(deferred);
        while (!ready.empty()) {
            uint32_t t = pop_ready(ready, order_rng);
            order.push_back(t);
            for (uint32_t u : succ[t])
                if (--pending[u] == 0) {
                    if (phase == 0 && late[u])
                        deferred.push_back(u);
                    else
                        ready.push_back(u);
                }
        }
    }
    if (order.size() != n_tab) throw CircuitError("table dependency cycle");

    for (uint32_t i = 0; i < n_tab; i += batch_size) {
        GarbledInstruction ins;
        ins.id = static_cast<uint32_t>(plan.instructions.size());
        for (uint32_t j = i; j < std::min(i + batch_size, n_tab); ++j) {
            uint32_t t = order[j];
            ins.tables.push_back({t, in0[t], in1[t], f.tables[t]});
        }
        plan.instructions.push_back(std::move(ins));
    }

    // release lists from last use; output wiring pins its slots forever
    const uint64_t n_slots = static_cast<uint64_t>(n_in) + n_tab;
    std::vector<int64_t> last_use(n_slots, -1), produced(n_slots, -1);
    for (size_t k = 0; k < plan.instructions.size(); ++k) {
        for (const InstrTable& it : plan.instructions[k].tables) {
            produced[n_in + it.table_index] = static_cast<int64_t>(k);
            for (const auto* side : {&it.in0_slots, &it.in1_slots})
                for (uint32_t s : *side)
                    last_use[s] = std::max(last_use[s], static_cast<int64_t>(k));
        }
    }
    std::vector<uint8_t> pinned(n_slots, 0);
    for (const auto& desc : plan.output_slots)
        for (uint32_t s : desc) pinned[s] = 1;
    for (uint64_t s = 0; s < n_slots; ++s) {
        if (pinned[s]) continue;
        int64_t at = last_use[s];
        if (at < 0) at = s < n_in ? (plan.instructions.empty() ? -1 : 0) : produced[s];
        if (at >= 0)
            plan.instructions[static_cast<size_t>(at)].release_slots.push_back(
                static_cast<uint32_t>(s));
    }

    uint64_t live = n_in, peak = n_in;
    for (const auto& ins : plan.instructions) {
        live += ins.tables.size();
        peak = std::max(peak, live);
        live -= ins.release_slots.size();
    }
    plan.live_peak = peak;
    return plan;
}

// --- payload formats ---

namespace {

struct MetaMsg {
    uint32_t wires = 0, gates = 0, tables = 0;
    uint32_t garbler_inputs = 0, evaluator_inputs = 0, outputs = 0;
    uint32_t instructions = 0;
};

uint8_t config_flags(const SessionConfig& cfg) {
    return static_cast<uint8_t>((cfg.mask_outputs ? 1 : 0) | (cfg.dealer_ot ? 2 : 0));
}

void send_hello(MsgChannel& ch, uint8_t role, const SessionConfig& cfg) {
    ByteWriter w;
    w.u16(kProtocolVersion);
    w.u8(role);
    w.u8(static_cast<uint8_t>(cfg.mode));
    w.u8(config_flags(cfg));
    w.u8(0);
    w.u32(cfg.batch_size);
    ch.send(MsgType::Hello, w.buf);
}

void check_hello(std::span<const uint8_t> payload, uint8_t want_role,
                 const SessionConfig& cfg) {
    ByteReader r(payload);
    if (r.u16() != kProtocolVersion) throw ProtocolError("protocol version mismatch");
    if (r.u8() != want_role) throw ProtocolError("unexpected peer role");
    if (r.u8() != static_cast<uint8_t>(cfg.mode)) throw ProtocolError("mode mismatch");
    if (r.u8() != config_flags(cfg)) throw ProtocolError("session flag mismatch");
    r.u8();
    if (r.u32() != cfg.batch_size) throw ProtocolError("batch size mismatch");
    r.expect_done();
}

void send_meta(MsgChannel& ch, const MetaMsg& m) {
    ByteWriter w;
    w.u32(m.wires);
    w.u32(m.gates);
    w.u32(m.tables);
    w.u32(m.garbler_inputs);
    w.u32(m.evaluator_inputs);
    w.u32(m.outputs);
    w.u32(m.instructions);
    ch.send(MsgType::Meta, w.buf);
}

MetaMsg parse_meta(std::span<const uint8_t> payload) {
    ByteReader r(payload);
    MetaMsg m;
    m.wires = r.u32();
    m.gates = r.u32();
    m.tables = r.u32();
    m.garbler_inputs = r.u32();
    m.evaluator_inputs = r.u32();
    m.outputs = r.u32();
    m.instructions = r.u32();
    r.expect_done();
    return m;
}

void write_slots(ByteWriter& w, const std::vector<uint32_t>& slots) {
    if (slots.size() > 0xFFFF) throw CircuitError("wiring descriptor too long");
    w.u16(static_cast<uint16_t>(slots.size()));
    for (uint32_t s : slots) w.u32(s);
}

std::vector<uint8_t> encode_instruction(const GarbledInstruction& ins) {
    ByteWriter w;
    w.u32(ins.id);
    w.u8(static_cast<uint8_t>(ins.tables.size()));
    for (const InstrTable& t : ins.tables) {
        w.u32(t.table_index);
        write_slots(w, t.in0_slots);
        write_slots(w, t.in1_slots);
        for (const Block& row : t.rows.rows) w.block(row);
    }
    if (ins.release_slots.size() > 0xFFFF) throw CircuitError("release list too long");
    w.u16(static_cast<uint16_t>(ins.release_slots.size()));
    for (uint32_t s : ins.release_slots) w.u32(s);
    return std::move(w.buf);
}

std::vector<uint8_t> encode_decode_info(const std::vector<std::vector<uint32_t>>& descs) {
    ByteWriter w;
    w.u32(static_cast<uint32_t>(descs.size()));
    for (const auto& d : descs) write_slots(w, d);
    return std::move(w.buf);
}

// --- transfer rounds; one call covers one batched round trip ---

void ot_send_round(MsgChannel& ch, Rng& rng, std::span<const LabelPair> pairs, bool dealer) {
    const size_t n = pairs.size();
    if (n == 0) return;
    if (dealer) {
        ByteReader r(ch.expect(MsgType::OtReceiver));
        if (r.u32() != n) throw ProtocolError("transfer count mismatch");
        const uint8_t* bits = r.bytes((n + 7) / 8);
        r.expect_done();
        ByteWriter w;
        w.u32(static_cast<uint32_t>(n));
        for (size_t i = 0; i < n; ++i)
            w.block(pairs[i].pick((bits[i >> 3] >> (i & 7)) & 1));
        ch.send(MsgType::OtCipher, w.buf);
    } else {
        std::vector<OtSenderState> states;
        states.reserve(n);
        ByteWriter w;
        w.u32(static_cast<uint32_t>(n));
        for (size_t i = 0; i < n; ++i) {
            auto [st, msg] = ot_sender_setup(rng);
            states.push_back(st);
            w.bytes(msg.data(), msg.size());
        }
        ch.send(MsgType::OtSender, w.buf);

        ByteReader r(ch.expect(MsgType::OtReceiver));
        if (r.u32() != n) throw ProtocolError("transfer count mismatch");
        ByteWriter cts;
        cts.u32(static_cast<uint32_t>(n));
        for (size_t i = 0; i < n; ++i) {
            OtPoint p;
            std::copy_n(r.bytes(kOtPointBytes), kOtPointBytes, p.begin());
            OtCiphertexts ct = ot_sender_transfer(states[i], pairs[i].l0, pairs[i].l1, p);
            cts.block(ct.c0);
            cts.block(ct.c1);
        }
        r.expect_done();
        ch.send(MsgType::OtCipher, cts.buf);
    }
    if (ch.transcript()) ch.transcript()->ot_interactions += n;
}

std::vector<Block> ot_recv_round(MsgChannel& ch, Rng& rng, std::span<const uint8_t> choices,
                                 bool dealer) {
    const size_t n = choices.size();
    std::vector<Block> out;
    if (n == 0) return out;
    out.reserve(n);
    if (dealer) {
        ByteWriter w;
        w.u32(static_cast<uint32_t>(n));
        std::vector<uint8_t> packed((n + 7) / 8, 0);
        for (size_t i = 0; i < n; ++i)
            if (choices[i] & 1) packed[i >> 3] |= static_cast<uint8_t>(1u << (i & 7));
        w.bytes(packed.data(), packed.size());
        ch.send(MsgType::OtReceiver, w.buf);

        ByteReader r(ch.expect(MsgType::OtCipher));
        if (r.u32() != n) throw ProtocolError("transfer count mismatch");
        for (size_t i = 0; i < n; ++i) out.push_back(r.block());
        r.expect_done();
    } else {
        ByteReader r(ch.expect(MsgType::OtSender));
        if (r.u32() != n) throw ProtocolError("transfer count mismatch");
        std::vector<OtReceiverState> states;
        states.reserve(n);
        ByteWriter w;
        w.u32(static_cast<uint32_t>(n));
        for (size_t i = 0; i < n; ++i) {
            OtPoint a;
            std::copy_n(r.bytes(kOtPointBytes), kOtPointBytes, a.begin());
            auto [st, msg] = ot_receiver_choose(choices[i] & 1, a, rng);
            states.push_back(st);
            w.bytes(msg.data(), msg.size());
        }
        r.expect_done();
        ch.send(MsgType::OtReceiver, w.buf);

        ByteReader cr(ch.expect(MsgType::OtCipher));
        if (cr.u32() != n) throw ProtocolError("transfer count mismatch");
        for (size_t i = 0; i < n; ++i) {
            OtCiphertexts ct{cr.block(), cr.block()};
            out.push_back(ot_receiver_retrieve(states[i], ct));
        }
        cr.expect_done();
    }
    if (ch.transcript()) ch.transcript()->ot_interactions += n;
    return out;
}

} // namespace

// --- sessions ---

GarblerResult run_garbler(const Circuit& c, std::span<const uint8_t> x_g,
                          const SessionConfig& cfg, ByteChannel& raw) {
    if (cfg.batch_size < 1 || cfg.batch_size > kMaxBatchSize)
        throw std::invalid_argument("batch size must be between 1 and 4");
    if (x_g.size() != c.garbler_inputs.size())
        throw std::invalid_argument("garbler input length mismatch");

    Transcript tr;
    MsgChannel ch(raw, &tr);

    std::array<uint8_t, 32> seed;
    if (cfg.seed)
        seed = *cfg.seed;
    else
        SystemRng().fill(seed.data(), seed.size());
    SeedRng rng(seed);

    GarbleArtifacts art = garble_full(c, rng);
    const uint32_t n_out = c.output_size();

    std::vector<uint8_t> pad;
    MacKey key{};
    if (cfg.mask_outputs) {
        pad.resize(n_out);
        rng.fill(pad.data(), pad.size());
        for (auto& b : pad) b &= 1;
        key = mac_keygen(rng);
    }

    send_hello(ch, 0, cfg);
    check_hello(ch.expect(MsgType::Hello), 1, cfg);

    // decode bits as delivered; the pad shifts them so the evaluator only
    // ever sees masked cleartext
    std::vector<uint8_t> dbits = art.d.bits;
    for (size_t i = 0; i < pad.size(); ++i) dbits[i] ^= pad[i];

    std::vector<LabelPair> input_pairs;
    {
        size_t xi = 0;
        for (WireId w : c.garbler_inputs) {
            Block lab = art.zero_labels[w];
            if (x_g[xi++] & 1) lab ^= art.delta;
            input_pairs.push_back({lab, lab});
        }
        for (WireId w : c.evaluator_inputs)
            input_pairs.push_back({art.zero_labels[w], art.zero_labels[w] ^ art.delta});
    }
    std::vector<LabelPair> decode_pairs;
    for (uint32_t o = 0; o < n_out; ++o) {
        Block b{static_cast<uint64_t>(dbits[o]), 0};
        decode_pairs.push_back({b, b});
    }

    MetaMsg meta;
    meta.wires = art.f.wire_count;
    meta.gates = static_cast<uint32_t>(art.f.gates.size());
    meta.tables = static_cast<uint32_t>(art.f.tables.size());
    meta.garbler_inputs = static_cast<uint32_t>(c.garbler_inputs.size());
    meta.evaluator_inputs = static_cast<uint32_t>(c.evaluator_inputs.size());
    meta.outputs = n_out;

    if (cfg.mode == Mode::MaxPerformance) {
        send_meta(ch, meta);
        ch.send(MsgType::FBlob, serialize_garbled(art.f));
        std::vector<LabelPair> all = input_pairs;
        all.insert(all.end(), decode_pairs.begin(), decode_pairs.end());
        ot_send_round(ch, rng, all, cfg.dealer_ot);
    } else {
        InstructionPlan plan = plan_instructions(art.f, cfg.batch_size, &rng);
        meta.instructions = static_cast<uint32_t>(plan.instructions.size());
        send_meta(ch, meta);
        ot_send_round(ch, rng, input_pairs, cfg.dealer_ot);
        for (const GarbledInstruction& ins : plan.instructions) {
            ch.send(MsgType::Instr, encode_instruction(ins));
            ByteReader ack(ch.expect(MsgType::Labels));
            if (ack.u32() != ins.id) throw ProtocolError("instruction receipt mismatch");
            ack.expect_done();
            ++tr.ot_interactions;
        }
        ch.send(MsgType::Decode, encode_decode_info(plan.output_slots));
        ot_send_round(ch, rng, decode_pairs, cfg.dealer_ot);
    }

    GarblerResult result;
    if (cfg.mask_outputs) {
        ByteReader r(ch.expect(MsgType::OutMasked));
        if (r.u32() != n_out) throw ProtocolError("output label count mismatch");
        std::vector<uint8_t> y(n_out);
        for (uint32_t o = 0; o < n_out; ++o) {
            Block lab = r.block();
            Block zero = art.zero_labels[c.outputs[o]];
            if (lab == zero)
                y[o] = 0;
            else if (lab == (zero ^ art.delta))
                y[o] = 1;
            else
                throw ProtocolError("forged output label");
        }
        r.expect_done();
        auto [masked, tag] = mask_output_bits(y, pad, key);
        (void)masked;
        ByteWriter w;
        w.block(tag);
        ch.send(MsgType::OutTag, w.buf);
        result.mask = OutputMask{std::move(pad), key, tag};
    }
    ch.expect(MsgType::Done);
    result.transcript = std::move(tr);
    return result;
}

namespace {

void exchange_masked_outputs(MsgChannel& ch, const SessionConfig& cfg,
                             std::span<const WireLabel> y_labels, EvaluatorResult& result) {
    if (!cfg.mask_outputs) return;
    ByteWriter w;
    w.u32(static_cast<uint32_t>(y_labels.size()));
    for (const Block& b : y_labels) w.block(b);
    ch.send(MsgType::OutMasked, w.buf);
    ByteReader r(ch.expect(MsgType::OutTag));
    result.tag = r.block();
    r.expect_done();
}

} // namespace

EvaluatorResult run_evaluator(std::span<const uint8_t> x_e, const SessionConfig& cfg,
                              ByteChannel& raw) {
    if (cfg.batch_size < 1 || cfg.batch_size > kMaxBatchSize)
        throw std::invalid_argument("batch size must be between 1 and 4");

    Transcript tr;
    MsgChannel ch(raw, &tr);
    SystemRng rng;

    check_hello(ch.expect(MsgType::Hello), 0, cfg);
    send_hello(ch, 1, cfg);

    MetaMsg meta = parse_meta(ch.expect(MsgType::Meta));
    if (meta.evaluator_inputs != x_e.size())
        throw ProtocolError("evaluator input size mismatch");
    const uint32_t n_in = meta.garbler_inputs + meta.evaluator_inputs;

    EvaluatorResult result;

    if (cfg.mode == Mode::MaxPerformance) {
        GarbledCircuit f;
        try {
            f = deserialize_garbled(ch.expect(MsgType::FBlob));
        } catch (const CircuitError& e) {
            throw ProtocolError(std::string("bad garbled circuit: ") + e.what());
        }
        if (f.wire_count != meta.wires || f.gates.size() != meta.gates ||
            f.tables.size() != meta.tables ||
            f.garbler_inputs.size() != meta.garbler_inputs ||
            f.evaluator_inputs.size() != meta.evaluator_inputs ||
            f.outputs.size() != meta.outputs)
            throw ProtocolError("garbled circuit does not match announced shape");

        std::vector<uint8_t> choices(n_in + meta.outputs, 0);
        for (size_t i = 0; i < x_e.size(); ++i)
            choices[meta.garbler_inputs + i] = x_e[i] & 1;
        std::vector<Block> got = ot_recv_round(ch, rng, choices, cfg.dealer_ot);

        std::span<const Block> x_labels(got.data(), n_in);
        std::vector<WireLabel> y_labels = evaluate(f, x_labels);
        result.outputs.resize(meta.outputs);
        for (uint32_t o = 0; o < meta.outputs; ++o)
            result.outputs[o] =
                static_cast<uint8_t>(y_labels[o].color() ^ (got[n_in + o].lo & 1));
        result.peak_live_labels = f.wire_count;
        exchange_masked_outputs(ch, cfg, y_labels, result);
    } else {
        const uint64_t n_slots = static_cast<uint64_t>(n_in) + meta.tables;
        std::vector<Block> slot(n_slots);
        std::vector<uint8_t> held(n_slots, 0);
        uint64_t live = 0, peak = 0;

        std::vector<uint8_t> choices(n_in, 0);
        for (size_t i = 0; i < x_e.size(); ++i)
            choices[meta.garbler_inputs + i] = x_e[i] & 1;
        std::vector<Block> got = ot_recv_round(ch, rng, choices, cfg.dealer_ot);
        for (uint32_t i = 0; i < n_in; ++i) {
            slot[i] = got[i];
            held[i] = 1;
        }
        live = peak = n_in;

        auto gather = [&](ByteReader& r) {
            uint16_t k = r.u16();
            Block acc;
            for (uint16_t i = 0; i < k; ++i) {
                uint32_t s = r.u32();
                if (s >= n_slots || !held[s])
                    throw ProtocolError("reference to a label not held");
                acc ^= slot[s];
            }
            return acc;
        };

        for (uint32_t k = 0; k < meta.instructions; ++k) {
            ByteReader r(ch.expect(MsgType::Instr));
            if (r.u32() != k) throw ProtocolError("instruction out of order");
            uint8_t n_tables = r.u8();
            if (n_tables == 0 || n_tables > cfg.batch_size)
                throw ProtocolError("invalid instruction size");
            for (uint8_t t = 0; t < n_tables; ++t) {
                uint32_t tidx = r.u32();
                if (tidx >= meta.tables) throw ProtocolError("table index out of range");
                uint64_t out_slot = static_cast<uint64_t>(n_in) + tidx;
                if (held[out_slot]) throw ProtocolError("table delivered twice");
                Block a = gather(r);
                Block b = gather(r);
                GarbledTable rows;
                for (Block& row : rows.rows) row = r.block();
                int sel = 2 * a.color() + b.color();
                Block h = fixed_key_hash(a, b, tidx);
                slot[out_slot] = sel == 0 ? h : rows.rows[sel - 1] ^ h;
                held[out_slot] = 1;
                ++live;
                peak = std::max(peak, live);
            }
            uint16_t n_rel = r.u16();
            for (uint16_t i = 0; i < n_rel; ++i) {
                uint32_t s = r.u32();
                if (s >= n_slots || !held[s]) throw ProtocolError("release of a label not held");
                held[s] = 0;
                --live;
            }
            r.expect_done();
            ByteWriter ack;
            ack.u32(k);
            ch.send(MsgType::Labels, ack.buf);
            ++tr.ot_interactions;
        }

        ByteReader dr(ch.expect(MsgType::Decode));
        if (dr.u32() != meta.outputs) throw ProtocolError("output descriptor count mismatch");
        std::vector<WireLabel> y_labels;
        y_labels.reserve(meta.outputs);
        for (uint32_t o = 0; o < meta.outputs; ++o) y_labels.push_back(gather(dr));
        dr.expect_done();

        std::vector<uint8_t> zero_choices(meta.outputs, 0);
        std::vector<Block> dblocks = ot_recv_round(ch, rng, zero_choices, cfg.dealer_ot);
        result.outputs.resize(meta.outputs);
        for (uint32_t o = 0; o < meta.outputs; ++o)
            result.outputs[o] =
                static_cast<uint8_t>(y_labels[o].color() ^ (dblocks[o].lo & 1));
        result.peak_live_labels = peak;
        exchange_masked_outputs(ch, cfg, y_labels, result);
    }

    ch.send(MsgType::Done, {});
    result.transcript = std::move(tr);
    return result;
}

} // namespace gcsim
