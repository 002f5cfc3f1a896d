#include "gcsim/channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "gcsim/errors.hpp"

namespace gcsim {

const char* msg_type_name(MsgType t) {
    switch (t) {
        case MsgType::Hello: return "HELLO";
        case MsgType::Meta: return "META";
        case MsgType::FBlob: return "F_BLOB";
        case MsgType::Decode: return "DECODE";
        case MsgType::OtSender: return "OT_S";
        case MsgType::OtReceiver: return "OT_R";
        case MsgType::OtCipher: return "OT_CT";
        case MsgType::Instr: return "INSTR";
        case MsgType::Labels: return "LABELS";
        case MsgType::OutMasked: return "OUT_MASKED";
        case MsgType::OutTag: return "OUT_TAG";
        case MsgType::Done: return "DONE";
    }
    return "?";
}

uint64_t Transcript::bytes_sent() const {
    uint64_t n = 0;
    for (const auto& m : messages)
        if (m.outgoing) n += 5 + m.length;
    return n;
}

uint64_t Transcript::bytes_received() const {
    uint64_t n = 0;
    for (const auto& m : messages)
        if (!m.outgoing) n += 5 + m.length;
    return n;
}

uint64_t Transcript::count(MsgType t) const {
    uint64_t n = 0;
    for (const auto& m : messages)
        if (m.type == t) ++n;
    return n;
}

void MsgChannel::send(MsgType t, std::span<const uint8_t> payload) {
    uint8_t header[5];
    header[0] = static_cast<uint8_t>(t);
    uint32_t len = static_cast<uint32_t>(payload.size());
    for (int i = 0; i < 4; ++i) header[1 + i] = static_cast<uint8_t>(len >> (8 * i));
    raw_.send_all(header, 5);
    if (!payload.empty()) raw_.send_all(payload.data(), payload.size());
    if (transcript_) transcript_->messages.push_back({true, t, len});
}

std::pair<MsgType, std::vector<uint8_t>> MsgChannel::recv() {
    uint8_t header[5];
    raw_.recv_all(header, 5);
    if (header[0] < static_cast<uint8_t>(MsgType::Hello) ||
        header[0] > static_cast<uint8_t>(MsgType::Done))
        throw ProtocolError("unknown message type " + std::to_string(header[0]));
    MsgType t = static_cast<MsgType>(header[0]);
    uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len |= static_cast<uint32_t>(header[1 + i]) << (8 * i);
    std::vector<uint8_t> payload(len);
    if (len) raw_.recv_all(payload.data(), len);
    if (transcript_) transcript_->messages.push_back({false, t, len});
    return {t, std::move(payload)};
}

std::vector<uint8_t> MsgChannel::expect(MsgType t) {
    auto [got, payload] = recv();
    if (got != t)
        throw ProtocolError(std::string("expected ") + msg_type_name(t) + ", got " +
                            msg_type_name(got));
    return std::move(payload);
}

std::pair<std::unique_ptr<LoopbackChannel>, std::unique_ptr<LoopbackChannel>>
LoopbackChannel::make() {
    auto q1 = std::make_shared<Queue>();
    auto q2 = std::make_shared<Queue>();
    std::unique_ptr<LoopbackChannel> a(new LoopbackChannel(q1, q2));
    std::unique_ptr<LoopbackChannel> b(new LoopbackChannel(q2, q1));
    return {std::move(a), std::move(b)};
}

LoopbackChannel::~LoopbackChannel() {
    for (auto& q : {rx_, tx_}) {
        std::lock_guard<std::mutex> lock(q->mu);
        q->closed = true;
        q->cv.notify_all();
    }
}

void LoopbackChannel::send_all(const uint8_t* data, size_t n) {
    std::lock_guard<std::mutex> lock(tx_->mu);
    if (tx_->closed) throw ProtocolError("channel closed");
    tx_->bytes.insert(tx_->bytes.end(), data, data + n);
    tx_->cv.notify_all();
}

void LoopbackChannel::recv_all(uint8_t* data, size_t n) {
    std::unique_lock<std::mutex> lock(rx_->mu);
    for (size_t i = 0; i < n; ++i) {
        rx_->cv.wait(lock, [&] { return !rx_->bytes.empty() || rx_->closed; });
        if (rx_->bytes.empty()) throw ProtocolError("peer closed the channel");
        data[i] = rx_->bytes.front();
        rx_->bytes.pop_front();
    }
}

static void set_nodelay(int fd) {
    int one = 1;
    setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

TcpChannel TcpChannel::connect(const std::string& host, uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res)
        throw ProtocolError("cannot resolve " + host);
    int fd = -1;
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        fd = socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        close(fd);
        fd = -1;
    }
    freeaddrinfo(res);
    if (fd < 0) throw ProtocolError("cannot connect to " + host + ":" + std::to_string(port));
    set_nodelay(fd);
    return TcpChannel(fd);
}

TcpChannel::TcpChannel(int fd) : fd_(fd) {}

TcpChannel::TcpChannel(TcpChannel&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }

TcpChannel& TcpChannel::operator=(TcpChannel&& o) noexcept {
    if (this != &o) {
        if (fd_ >= 0) close(fd_);
        fd_ = o.fd_;
        o.fd_ = -1;
    }
    return *this;
}

TcpChannel::~TcpChannel() {
    if (fd_ >= 0) close(fd_);
}

void TcpChannel::send_all(const uint8_t* data, size_t n) {
    while (n > 0) {
        ssize_t w = ::send(fd_, data, n, MSG_NOSIGNAL);
        if (w < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(std::string("send failed: ") + std::strerror(errno));
        }
        data += w;
        n -= static_cast<size_t>(w);
    }
}

void TcpChannel::recv_all(uint8_t* data, size_t n) {
    while (n > 0) {
        ssize_t r = ::recv(fd_, data, n, 0);
        if (r < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(std::string("recv failed: ") + std::strerror(errno));
        }
        if (r == 0) throw ProtocolError("peer closed the connection");
        data += r;
        n -= static_cast<size_t>(r);
    }
}

TcpListener::TcpListener(uint16_t port) {
    fd_ = socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw ProtocolError("cannot create socket");
    int one = 1;
    setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
        close(fd_);
        throw ProtocolError("cannot bind port " + std::to_string(port));
    }
    if (listen(fd_, 1) != 0) {
        close(fd_);
        throw ProtocolError("listen failed");
    }
    socklen_t len = sizeof addr;
    getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
    if (fd_ >= 0) close(fd_);
}

TcpChannel TcpListener::accept_one() {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0) throw ProtocolError("accept failed");
    set_nodelay(fd);
    return TcpChannel(fd);
}

} // namespace gcsim
