#include "gcsim/garble.hpp"

#include <cstring>

#include "gcsim/crypto.hpp"
#include "gcsim/errors.hpp"
#include "gcsim/wirefmt.hpp"

namespace gcsim {

GarbleArtifacts garble_full(const Circuit& c, Rng& rng) {
    c.validate();
    GarbleArtifacts art;
    art.delta = rng.block();
    art.delta.lo |= 1; // color bits of a pair must differ
    art.zero_labels.assign(c.wire_count(), Block{});

    std::vector<WireId> inputs = c.input_order();
    for (WireId w : inputs) art.zero_labels[w] = rng.block();

    GarbledCircuit& f = art.f;
    f.wire_count = c.wire_count();
    f.garbler_inputs = c.garbler_inputs;
    f.evaluator_inputs = c.evaluator_inputs;
    f.outputs = c.outputs;

    for (uint32_t gi : topo_order(c)) {
        const Gate& g = c.gates[gi];
        EvalGate eg;
        eg.n_in = static_cast<uint8_t>(gate_arity(g.kind));
        eg.in0 = g.in0;
        eg.in1 = eg.n_in == 2 ? g.in1 : 0;
        eg.out = g.out;

        const Block a0 = art.zero_labels[g.in0];
        const Block b0 = eg.n_in == 2 ? art.zero_labels[g.in1] : Block{};
        if (is_free(g.kind)) {
            eg.is_table = 0;
            switch (g.kind) {
                case GateKind::Xor: art.zero_labels[g.out] = a0 ^ b0; break;
                case GateKind::Xnor: art.zero_labels[g.out] = a0 ^ b0 ^ art.delta; break;
                case GateKind::Not: art.zero_labels[g.out] = a0 ^ art.delta; break;
                default: art.zero_labels[g.out] = a0; break; // Buf
            }
        } else {
            eg.is_table = 1;
            eg.table_index = static_cast<uint32_t>(f.tables.size());
            const uint64_t tweak = eg.table_index;
            const int alpha = a0.color();
            const int beta = b0.color();

            // Row 0 (both colors zero) is reduced away: its hash becomes the
            // output label directly, fixing the wire's zero label.
            auto label_for_color = [&](const Block& zero, int zero_color, int color) {
                return color == zero_color ? zero : zero ^ art.delta;
            };
            const Block w00 = fixed_key_hash(label_for_color(a0, alpha, 0),
                                             label_for_color(b0, beta, 0), tweak);
            const bool z00 = gate_eval(g.kind, alpha != 0, beta != 0);
            const Block c0 = z00 ? w00 ^ art.delta : w00;
            art.zero_labels[g.out] = c0;

            GarbledTable table;
            for (int row = 1; row < 4; ++row) {
                const int ca = row >> 1;
                const int cb = row & 1;
                const Block key = fixed_key_hash(label_for_color(a0, alpha, ca),
                                                 label_for_color(b0, beta, cb), tweak);
                const bool z = gate_eval(g.kind, (ca ^ alpha) != 0, (cb ^ beta) != 0);
                table.rows[row - 1] = key ^ (z ? c0 ^ art.delta : c0);
            }
            f.tables.push_back(table);
        }
        f.gates.push_back(eg);
    }

    art.e.garbler_count = static_cast<uint32_t>(c.garbler_inputs.size());
    art.e.evaluator_count = static_cast<uint32_t>(c.evaluator_inputs.size());
    for (WireId w : inputs)
        art.e.labels.push_back({art.zero_labels[w], art.zero_labels[w] ^ art.delta});

    for (WireId w : c.outputs)
        art.d.bits.push_back(static_cast<uint8_t>(art.zero_labels[w].color()));
    return art;
}

GarbleArtifacts garble_full(const Circuit& c, const std::array<uint8_t, 32>& seed) {
    SeedRng rng(seed);
    return garble_full(c, rng);
}

std::tuple<GarbledCircuit, EncodingInfo, DecodingInfo> garble(
    const Circuit& c, const std::array<uint8_t, 32>& seed) {
    GarbleArtifacts art = garble_full(c, seed);
    return {std::move(art.f), std::move(art.e), std::move(art.d)};
}

std::vector<WireLabel> encode(const EncodingInfo& e, std::span<const uint8_t> x) {
    if (x.size() != e.labels.size())
        throw std::invalid_argument("input length does not match encoding");
    std::vector<WireLabel> out;
    out.reserve(x.size());
    for (size_t i = 0; i < x.size(); ++i) out.push_back(e.labels[i].pick(x[i] & 1));
    return out;
}

std::vector<WireLabel> evaluate(const GarbledCircuit& f,
                                std::span<const WireLabel> x_labels) {
    if (x_labels.size() != f.input_size())
        throw std::invalid_argument("label count does not match circuit inputs");
    std::vector<WireLabel> wire(f.wire_count, Block{});
    size_t xi = 0;
    for (WireId w : f.garbler_inputs) wire[w] = x_labels[xi++];
    for (WireId w : f.evaluator_inputs) wire[w] = x_labels[xi++];

    for (const EvalGate& g : f.gates) {
        if (!g.is_table) {
            wire[g.out] = g.n_in == 2 ? wire[g.in0] ^ wire[g.in1] : wire[g.in0];
            continue;
        }
        const Block a = wire[g.in0];
        const Block b = wire[g.in1];
        const int row = 2 * a.color() + b.color();
        const Block key = fixed_key_hash(a, b, g.table_index);
        wire[g.out] = row == 0 ? key : f.tables[g.table_index].rows[row - 1] ^ key;
    }

    std::vector<WireLabel> y;
    y.reserve(f.outputs.size());
    for (WireId w : f.outputs) y.push_back(wire[w]);
    return y;
}

std::vector<uint8_t> decode(const DecodingInfo& d, std::span<const WireLabel> y_labels) {
    if (y_labels.size() != d.bits.size())
        throw std::invalid_argument("label count does not match decoding");
    std::vector<uint8_t> y;
    y.reserve(d.bits.size());
    for (size_t i = 0; i < d.bits.size(); ++i)
        y.push_back(static_cast<uint8_t>(y_labels[i].color() ^ d.bits[i]));
    return y;
}

static constexpr char kMagic[4] = {'G', 'E', 'D', 'A'};
static constexpr uint16_t kFormatVersion = 1;

std::vector<uint8_t> serialize_garbled(const GarbledCircuit& f) {
    ByteWriter w;
    w.bytes(reinterpret_cast<const uint8_t*>(kMagic), 4);
    w.u16(kFormatVersion);
    w.u16(0);
    w.u32(f.wire_count);
    w.u32(static_cast<uint32_t>(f.gates.size()));
    w.u32(static_cast<uint32_t>(f.tables.size()));
    w.u32(static_cast<uint32_t>(f.garbler_inputs.size()));
    w.u32(static_cast<uint32_t>(f.evaluator_inputs.size()));
    w.u32(static_cast<uint32_t>(f.outputs.size()));
    for (WireId id : f.garbler_inputs) w.u32(id);
    for (WireId id : f.evaluator_inputs) w.u32(id);
    for (WireId id : f.outputs) w.u32(id);
    for (const EvalGate& g : f.gates) {
        w.u8(g.is_table);
        w.u8(g.n_in);
        w.u32(g.in0);
        if (g.n_in == 2) w.u32(g.in1);
        w.u32(g.out);
        if (g.is_table)
            for (const Block& row : f.tables[g.table_index].rows) w.block(row);
    }
    return std::move(w.buf);
}

GarbledCircuit deserialize_garbled(std::span<const uint8_t> data) {
    try {
        ByteReader r(data);
        if (std::memcmp(r.bytes(4), kMagic, 4) != 0)
            throw CircuitError("bad magic in garbled circuit");
        if (r.u16() != kFormatVersion)
            throw CircuitError("unsupported garbled circuit version");
        r.u16();
        GarbledCircuit f;
        f.wire_count = r.u32();
        const uint32_t gate_count = r.u32();
        const uint32_t table_count = r.u32();
        const uint32_t n_gi = r.u32();
        const uint32_t n_ei = r.u32();
        const uint32_t n_out = r.u32();

        std::vector<uint8_t> have(f.wire_count, 0);
        auto read_id = [&]() {
            uint32_t id = r.u32();
            if (id >= f.wire_count) throw CircuitError("wire id out of range");
            return id;
        };
        for (uint32_t i = 0; i < n_gi; ++i) {
            WireId id = read_id();
            f.garbler_inputs.push_back(id);
            have[id] = 1;
        }
        for (uint32_t i = 0; i < n_ei; ++i) {
            WireId id = read_id();
            f.evaluator_inputs.push_back(id);
            have[id] = 1;
        }
        for (uint32_t i = 0; i < n_out; ++i) f.outputs.push_back(read_id());

        for (uint32_t i = 0; i < gate_count; ++i) {
            EvalGate g;
            g.is_table = r.u8();
            g.n_in = r.u8();
            if (g.is_table > 1 || (g.n_in != 1 && g.n_in != 2) || (g.is_table && g.n_in != 2))
                throw CircuitError("malformed gate record");
            g.in0 = read_id();
            if (g.n_in == 2) g.in1 = read_id();
            g.out = read_id();
            if (!have[g.in0] || (g.n_in == 2 && !have[g.in1]))
                throw CircuitError("gate reads an undefined wire");
            if (have[g.out]) throw CircuitError("wire defined twice");
            have[g.out] = 1;
            if (g.is_table) {
                g.table_index = static_cast<uint32_t>(f.tables.size());
                GarbledTable t;
                for (Block& row : t.rows) row = r.block();
                f.tables.push_back(t);
            }
            f.gates.push_back(g);
        }
        if (f.tables.size() != table_count)
            throw CircuitError("table count mismatch in garbled circuit");
        for (WireId w : f.outputs)
            if (!have[w]) throw CircuitError("output wire is undefined");
        r.expect_done();
        return f;
    } catch (const ProtocolError& e) {
        throw CircuitError(std::string("malformed garbled circuit: ") + e.what());
    }
}

} // namespace gcsim
