#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gcsim {

// Session message types. Every frame is a 1-byte type followed by a 32-bit
// little-endian payload length.
enum class MsgType : uint8_t {
    Hello = 1,     // version, role, mode, flags, batch size
    Meta = 2,      // circuit shape counts
    FBlob = 3,     // serialized garbled circuit
    Decode = 4,    // output wiring descriptors (streamed mode)
    OtSender = 5,  // batched sender flow
    OtReceiver = 6,// batched receiver flow (or packed choices, dealer mode)
    OtCipher = 7,  // batched ciphertext pairs (or payloads, dealer mode)
    Instr = 8,     // one garbled instruction
    Labels = 9,    // evaluator's instruction receipt
    OutMasked = 10,// evaluator's output labels (masked sessions)
    OutTag = 11,   // authenticator over the masked output
    Done = 12
};

const char* msg_type_name(MsgType t);

struct MsgRecord {
    bool outgoing;
    MsgType type;
    uint32_t length;
};

// What a party can observe about its own session traffic.
struct Transcript {
    std::vector<MsgRecord> messages;
    uint64_t ot_interactions = 0;

    uint64_t bytes_sent() const;
    uint64_t bytes_received() const;
    uint64_t count(MsgType t) const;
};

// Blocking byte transport.
class ByteChannel {
public:
    virtual ~ByteChannel() = default;
    virtual void send_all(const uint8_t* data, size_t n) = 0;
    virtual void recv_all(uint8_t* data, size_t n) = 0;
};

// Frame layer; optionally records into a transcript.
class MsgChannel {
public:
    explicit MsgChannel(ByteChannel& raw, Transcript* transcript = nullptr)
        : raw_(raw), transcript_(transcript) {}

    void send(MsgType t, std::span<const uint8_t> payload);
    std::pair<MsgType, std::vector<uint8_t>> recv();
    // recv() that throws ProtocolError unless the type matches.
    std::vector<uint8_t> expect(MsgType t);

    Transcript* transcript() { return transcript_; }

private:
    ByteChannel& raw_;
    Transcript* transcript_;
};

// In-process duplex pipe; endpoints are used from different threads.
class LoopbackChannel : public ByteChannel {
public:
    // Returns the two connected endpoints.
    static std::pair<std::unique_ptr<LoopbackChannel>, std::unique_ptr<LoopbackChannel>> make();
    ~LoopbackChannel() override;

    void send_all(const uint8_t* data, size_t n) override;
    void recv_all(uint8_t* data, size_t n) override;

private:
    struct Queue {
        std::mutex mu;
        std::condition_variable cv;
        std::deque<uint8_t> bytes;
        bool closed = false;
    };
    LoopbackChannel(std::shared_ptr<Queue> rx, std::shared_ptr<Queue> tx)
        : rx_(std::move(rx)), tx_(std::move(tx)) {}

    std::shared_ptr<Queue> rx_, tx_;
};

// TCP transport with Nagle disabled (the streamed mode is latency-bound).
class TcpChannel : public ByteChannel {
public:
    static TcpChannel connect(const std::string& host, uint16_t port);
    explicit TcpChannel(int fd);
    TcpChannel(TcpChannel&& o) noexcept;
    TcpChannel& operator=(TcpChannel&& o) noexcept;
    ~TcpChannel() override;

    void send_all(const uint8_t* data, size_t n) override;
    void recv_all(uint8_t* data, size_t n) override;

private:
    int fd_ = -1;
};

class TcpListener {
public:
    // port 0 binds an ephemeral port; see port().
    explicit TcpListener(uint16_t port);
    ~TcpListener();
    uint16_t port() const { return port_; }
    TcpChannel accept_one();

private:
    int fd_ = -1;
    uint16_t port_ = 0;
};

} // namespace gcsim
