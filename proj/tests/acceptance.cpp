// Acceptance harness: checks the externally observable guarantees one by
// one and prints a [PASS]/[FAIL] line per criterion. Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "gcsim/costmodel.hpp"
#include "gcsim/crypto.hpp"
#include "gcsim/errors.hpp"
#include "gcsim/garble.hpp"
#include "gcsim/gen.hpp"
#include "gcsim/ot.hpp"
#include "gcsim/protocol.hpp"
#include "gcsim/selector.hpp"

using namespace gcsim;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int num, const std::string& label, bool ok, const std::string& detail) {
    std::printf("[%s] %2d. %-38s %s\n", ok ? "PASS" : "FAIL", num, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

void criterion(int num, const std::string& label,
               const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        report(num, label, ok, detail);
    } catch (const std::exception& e) {
        report(num, label, false, std::string("exception: ") + e.what());
    }
}

std::array<uint8_t, 32> seed_of(uint64_t n) {
    std::array<uint8_t, 32> s{};
    for (int i = 0; i < 8; ++i) s[i] = static_cast<uint8_t>(n >> (8 * i));
    return s;
}

std::vector<uint8_t> index_bits(uint32_t idx, uint32_t n) {
    std::vector<uint8_t> bits(n);
    for (uint32_t i = 0; i < n; ++i) bits[i] = (idx >> i) & 1;
    return bits;
}

std::vector<uint8_t> random_bits(std::mt19937_64& rng, size_t n) {
    std::vector<uint8_t> x(n);
    for (auto& b : x) b = rng() & 1;
    return x;
}

struct SessionOutcome {
    GarblerResult g;
    EvaluatorResult e;
};

SessionOutcome run_loopback(const Circuit& c, std::span<const uint8_t> x,
                            const SessionConfig& cfg) {
    auto [end_g, end_e] = LoopbackChannel::make();
    SessionOutcome out;
    std::exception_ptr gerr;
    std::thread garbler([&] {
        auto own = std::move(end_g);
        try {
            out.g = run_garbler(c, {}, cfg, *own);
        } catch (...) {
            gerr = std::current_exception();
        }
    });
    std::exception_ptr eerr;
    try {
        out.e = run_evaluator(x, cfg, *end_e);
    } catch (...) {
        eerr = std::current_exception();
    }
    end_e.reset();
    garbler.join();
    if (eerr) std::rethrow_exception(eerr);
    if (gerr) std::rethrow_exception(gerr);
    return out;
}

SessionOutcome run_tcp(TcpListener& listener, const Circuit& c, std::span<const uint8_t> x,
                       const SessionConfig& cfg) {
    SessionOutcome out;
    std::exception_ptr gerr;
    std::thread garbler([&] {
        try {
            TcpChannel chan = listener.accept_one();
            out.g = run_garbler(c, {}, cfg, chan);
        } catch (...) {
            gerr = std::current_exception();
        }
    });
    std::exception_ptr eerr;
    try {
        TcpChannel chan = TcpChannel::connect("127.0.0.1", listener.port());
        out.e = run_evaluator(x, cfg, chan);
    } catch (...) {
        eerr = std::current_exception();
    }
    garbler.join();
    if (eerr) std::rethrow_exception(eerr);
    if (gerr) std::rethrow_exception(gerr);
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// 1. garbled evaluation equals plain evaluation across the whole suite
std::pair<bool, std::string> crit_correctness() {
    auto t0 = Clock::now();
    auto suite = benchmark_suite();
    if (suite.size() < 20)
        return {false, "suite has only " + std::to_string(suite.size()) + " circuits"};
    uint64_t vectors = 0;
    std::mt19937_64 rng(20240601);
    for (const auto& [name, c] : suite) {
        auto [f, e, d] = garble(c, seed_of(std::hash<std::string>{}(name)));
        const uint32_t n = c.input_size();
        auto one = [&](std::span<const uint8_t> x) {
            auto got = decode(d, evaluate(f, encode(e, x)));
            if (got != eval_plain(c, x))
                throw std::runtime_error("mismatch on " + name);
            ++vectors;
        };
        if (n <= 12)
            for (uint32_t idx = 0; idx < (1u << n); ++idx) one(index_bits(idx, n));
        else
            for (int t = 0; t < 1000; ++t) one(random_bits(rng, n));
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool ok = secs < 60.0;
    return {ok, std::to_string(suite.size()) + " circuits, " + std::to_string(vectors) +
                    " vectors, " + fmt(secs) + " s (< 60 s)"};
}

// 2. garbled material is exactly 48 bytes per non-free gate
std::pair<bool, std::string> crit_free_xor() {
    uint64_t checked = 0;
    for (const auto& [name, c] : benchmark_suite()) {
        auto [f, e, d] = garble(c, seed_of(99));
        CircuitStats s = circuit_stats(c);
        if (f.table_bytes() != 48 * s.nonfree_count)
            return {false, name + ": " + std::to_string(f.table_bytes()) + " bytes vs " +
                               std::to_string(48 * s.nonfree_count)};
        ++checked;
    }
    auto [f, e, d] = garble(parity(16), seed_of(98));
    if (f.table_bytes() != 0) return {false, "all-XOR circuit has table bytes"};
    return {true, std::to_string(checked) + " circuits at 48 B/table gate; all-XOR = 0 B"};
}

CircuitStats synthetic(uint64_t inst, uint32_t in, uint32_t out) {
    CircuitStats s;
    s.instruction_count = inst;
    s.input_size = in;
    s.output_size = out;
    return s;
}

// 3. transfer counts for three reference circuit shapes, exact
std::pair<bool, std::string> crit_ot_counts() {
    uint64_t aes = ot_count(synthetic(426, 128, 128), Mode::ResourceEfficient);
    uint64_t mult = ot_count(synthetic(2012, 512, 512), Mode::ResourceEfficient);
    uint64_t c6288 = ot_count(synthetic(4669, 32, 32), Mode::ResourceEfficient);
    bool ok = aes == 682 && mult == 3036 && c6288 == 4733;
    std::ostringstream os;
    os << aes << "/682, " << mult << "/3036, " << c6288 << "/4733";
    return {ok, os.str()};
}

// 4. timing estimates against the reference seconds
std::pair<bool, std::string> crit_timing() {
    auto rel = [](double got, double want) { return std::fabs(got - want) / want; };
    struct Row {
        CircuitStats s;
        Mode mode;
        double want, tol;
    };
    const Row rows[] = {
        {synthetic(426, 128, 128), Mode::ResourceEfficient, 1.6e-2, 0.05},
        {synthetic(2012, 512, 512), Mode::ResourceEfficient, 7.3e-2, 0.05},
        {synthetic(4669, 32, 32), Mode::ResourceEfficient, 1.1e-1, 0.05},
        {synthetic(2012, 512, 512), Mode::MaxPerformance, 1e-4, 0.10},
        {synthetic(4669, 32, 32), Mode::MaxPerformance, 2.3e-4, 0.10},
    };
    std::ostringstream os;
    bool ok = true;
    for (const Row& r : rows) {
        CostReport rep = estimate(r.s, r.mode);
        double got = r.mode == Mode::ResourceEfficient ? rep.time_ot_s
                                                       : rep.time_instruction_s;
        double e = rel(got, r.want);
        ok = ok && e < r.tol;
        os << fmt(got) << "~" << fmt(r.want) << " (" << fmt(e * 100) << "%) ";
    }
    return {ok, os.str()};
}

// 5. the three session variants agree with plain evaluation everywhere
std::pair<bool, std::string> crit_mode_equivalence() {
    std::mt19937_64 rng(777);
    uint64_t sessions = 0;
    for (const auto& [name, c] : benchmark_suite()) {
        CircuitStats stats = circuit_stats(c);
        uint64_t want_mp = ot_count(stats, Mode::MaxPerformance);
        uint64_t want_re = ot_count(stats, Mode::ResourceEfficient);
        TcpListener listener(0);
        for (int trial = 0; trial < 100; ++trial) {
            auto x = random_bits(rng, c.input_size());
            auto want = eval_plain(c, x);

            SessionConfig mp;
            mp.mode = Mode::MaxPerformance;
            SessionConfig re;
            re.mode = Mode::ResourceEfficient;

            SessionOutcome net_mp = run_tcp(listener, c, x, mp);
            SessionOutcome net_re = run_tcp(listener, c, x, re);
            SessionOutcome loop = run_loopback(c, x, mp);
            sessions += 3;

            if (net_mp.e.outputs != want || net_re.e.outputs != want ||
                loop.e.outputs != want)
                return {false, name + ": outputs diverge from plain evaluation"};
            if (net_mp.e.transcript.ot_interactions != want_mp ||
                loop.e.transcript.ot_interactions != want_mp)
                return {false, name + ": whole-circuit transfer count off"};
            if (net_re.e.transcript.ot_interactions != want_re)
                return {false, name + ": streamed transfer count off"};
        }
    }
    return {true, std::to_string(sessions) + " sessions, outputs and counts exact"};
}

// 6. streamed evaluation keeps few labels alive on the 6000-gate dag
std::pair<bool, std::string> crit_stream_memory() {
    Circuit c = suite_circuit("dag6000");
    std::mt19937_64 rng(31337);
    SessionConfig cfg;
    cfg.mode = Mode::ResourceEfficient;
    cfg.seed = seed_of(606060);
    auto x = random_bits(rng, c.input_size());
    SessionOutcome o = run_loopback(c, x, cfg);
    if (o.e.outputs != eval_plain(c, x)) return {false, "outputs wrong"};
    uint64_t wires = c.wire_count();
    uint64_t limit = wires / 4;
    bool ok = o.e.peak_live_labels < limit;
    return {ok, "peak " + std::to_string(o.e.peak_live_labels) + " labels of " +
                    std::to_string(wires) + " wires (limit " + std::to_string(limit) + ")"};
}

// 7. instruction order varies by seed; the output layer always comes last
std::pair<bool, std::string> crit_randomized_order() {
    Circuit c = suite_circuit("hamming16");
    auto [f, e, d] = garble(c, seed_of(12));
    std::set<uint32_t> out_wires(f.outputs.begin(), f.outputs.end());
    std::set<uint32_t> late;
    for (const auto& g : f.gates)
        if (g.is_table && out_wires.count(g.out)) late.insert(g.table_index);

    std::set<std::vector<uint32_t>> interior_orders;
    for (uint64_t s = 0; s < 50; ++s) {
        SeedRng order_rng(seed_of(4000 + s));
        InstructionPlan plan = plan_instructions(f, 4, &order_rng);
        std::vector<uint32_t> order;
        for (const auto& ins : plan.instructions)
            for (const auto& t : ins.tables) order.push_back(t.table_index);
        size_t first_late = order.size();
        for (size_t i = 0; i < order.size(); ++i)
            if (late.count(order[i])) {
                first_late = i;
                break;
            }
        for (size_t i = first_late; i < order.size(); ++i)
            if (!late.count(order[i]))
                return {false, "an interior table follows the output layer"};
        interior_orders.insert(
            std::vector<uint32_t>(order.begin(), order.begin() + first_late));
    }

    // outputs stay correct while the order varies
    std::mt19937_64 rng(55);
    auto x = random_bits(rng, c.input_size());
    auto want = eval_plain(c, x);
    for (uint64_t s = 0; s < 10; ++s) {
        SessionConfig cfg;
        cfg.mode = Mode::ResourceEfficient;
        cfg.seed = seed_of(8000 + s);
        if (run_loopback(c, x, cfg).e.outputs != want)
            return {false, "outputs depend on the schedule"};
    }
    bool ok = interior_orders.size() >= 45;
    return {ok, std::to_string(interior_orders.size()) + "/50 distinct interior orders, "
                    "output layer last in all"};
}

// 8. masked outputs authenticate; every mutation is caught
std::pair<bool, std::string> crit_masking() {
    Circuit c = suite_circuit("c17");
    std::mt19937_64 rng(999);
    SessionConfig cfg;
    cfg.mask_outputs = true;
    uint64_t sessions = 0, mutations = 0, rejected = 0;
    for (int t = 0; t < 1000; ++t) {
        auto x = random_bits(rng, c.input_size());
        SessionOutcome o = run_loopback(c, x, cfg);
        auto y = unmask_verify(o.e.outputs, *o.e.tag, o.g.mask->pad, o.g.mask->key);
        if (y != eval_plain(c, x)) return {false, "unmask did not recover the outputs"};
        ++sessions;
        for (size_t i = 0; i < o.e.outputs.size(); ++i) {
            auto bad = o.e.outputs;
            bad[i] ^= 1;
            ++mutations;
            try {
                unmask_verify(bad, *o.e.tag, o.g.mask->pad, o.g.mask->key);
            } catch (const MacError&) {
                ++rejected;
            }
        }
    }
    bool ok = rejected == mutations;
    return {ok, std::to_string(sessions) + " sessions recovered; " +
                    std::to_string(rejected) + "/" + std::to_string(mutations) +
                    " mutations rejected"};
}

// 9. selector combining: functional equality and the byte bound
std::pair<bool, std::string> crit_selector() {
    std::vector<Circuit> members{suite_circuit("c17"), suite_circuit("adder8"),
                                 suite_circuit("hamming16")};
    CombinedCircuit cc = combine(members);
    std::mt19937_64 rng(2718);
    for (uint32_t m = 0; m < members.size(); ++m) {
        const Circuit& mem = members[m];
        auto one = [&](std::span<const uint8_t> x) {
            auto want = eval_plain(mem, x);
            auto got = eval_plain(cc.circuit, combined_input(cc, m, x));
            for (size_t j = 0; j < want.size(); ++j)
                if (got[j] != want[j]) throw std::runtime_error("member mismatch");
        };
        uint32_t n = mem.input_size();
        if (n <= 12)
            for (uint32_t idx = 0; idx < (1u << n); ++idx) one(index_bits(idx, n));
        else
            for (int t = 0; t < 300; ++t) one(random_bits(rng, n));
    }

    std::vector<CircuitStats> stats;
    for (const Circuit& m : members) stats.push_back(circuit_stats(m));
    CircuitStats comb = circuit_stats(cc.circuit);
    SelectorSavings s = selector_savings(stats, comb, Mode::MaxPerformance);
    bool bytes_ok = s.combined_bytes < s.member_bytes_total + s.mux_bound_bytes;
    bool ok = bytes_ok && s.member_sessions == 3 && s.combined_sessions == 1;
    return {ok, "sessions 1 vs 3; " + std::to_string(s.combined_bytes) + " B < " +
                    std::to_string(s.member_bytes_total) + " + " +
                    std::to_string(s.mux_bound_bytes) + " B"};
}

// 10. transfer primitive: both choices, many instances, independent lanes
std::pair<bool, std::string> crit_ot_unit() {
    SystemRng rng;
    std::mt19937_64 pick(161803);
    for (int i = 0; i < 1000; ++i) {
        int choice = (i < 500) ? (i & 1) : static_cast<int>(pick() & 1);
        Block x0 = rng.block(), x1 = rng.block();
        auto [ss, a] = ot_sender_setup(rng);
        auto [rs, b] = ot_receiver_choose(choice, a, rng);
        OtCiphertexts cts = ot_sender_transfer(ss, x0, x1, b);
        if (ot_receiver_retrieve(rs, cts) != (choice ? x1 : x0))
            return {false, "wrong payload at instance " + std::to_string(i)};
    }
    // lanes of a batch do not interfere
    const int n = 64;
    std::vector<OtSenderState> ss(n);
    std::vector<OtReceiverState> rs(n);
    std::vector<Block> x0(n), x1(n);
    std::vector<OtPoint> a(n), b(n);
    std::vector<int> choice(n);
    for (int i = 0; i < n; ++i) {
        x0[i] = rng.block();
        x1[i] = rng.block();
        choice[i] = static_cast<int>(pick() & 1);
        std::tie(ss[i], a[i]) = ot_sender_setup(rng);
    }
    for (int i = 0; i < n; ++i)
        std::tie(rs[i], b[i]) = ot_receiver_choose(choice[i], a[i], rng);
    for (int i = 0; i < n; ++i) {
        OtCiphertexts cts = ot_sender_transfer(ss[i], x0[i], x1[i], b[i]);
        if (ot_receiver_retrieve(rs[i], cts) != (choice[i] ? x1[i] : x0[i]))
            return {false, "batch lane " + std::to_string(i) + " corrupted"};
    }
    return {true, "1000 instances + 64 batch lanes exact"};
}

// 11. whole-circuit pipeline speed on the 6000-gate dag
std::pair<bool, std::string> crit_performance() {
    Circuit c = suite_circuit("dag6000");
    std::mt19937_64 rng(424242);
    auto x = random_bits(rng, c.input_size());
    auto want = eval_plain(c, x);
    auto t0 = Clock::now();
    auto [f, e, d] = garble(c, seed_of(11));
    auto y = decode(d, evaluate(f, encode(e, x)));
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (y != want) return {false, "outputs wrong"};
    bool ok = secs < 2.0;
    return {ok, "garble+evaluate in " + fmt(secs) + " s (< 2 s)"};
}

} // namespace

int main() {
    criterion(1, "garbling correctness across the suite", crit_correctness);
    criterion(2, "48 bytes per table gate, XOR free", crit_free_xor);
    criterion(3, "transfer counts, exact", crit_ot_counts);
    criterion(4, "timing estimates within tolerance", crit_timing);
    criterion(5, "session variants agree everywhere", crit_mode_equivalence);
    criterion(6, "streamed peak label count", crit_stream_memory);
    criterion(7, "randomized order, output layer last", crit_randomized_order);
    criterion(8, "output masking and authentication", crit_masking);
    criterion(9, "selector combining", crit_selector);
    criterion(10, "transfer primitive correctness", crit_ot_unit);
    criterion(11, "end-to-end speed on 6000 gates", crit_performance);

    if (g_failures == 0)
        std::printf("all 11 criteria hold\n");
    else
        std::printf("%d criteria failing\n", g_failures);
    return g_failures;
}
