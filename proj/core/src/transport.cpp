#include "symed/transport.hpp"

#include <cmath>
#include <cstring>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

namespace symed {

namespace {

void putU16(std::uint8_t* out, std::uint16_t v) {
    out[0] = static_cast<std::uint8_t>(v & 0xff);
    out[1] = static_cast<std::uint8_t>(v >> 8);
}

void putU64(std::uint8_t* out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out[i] = static_cast<std::uint8_t>((v >> (8 * i)) & 0xff);
    }
}

std::uint16_t getU16(const std::uint8_t* in) {
    return static_cast<std::uint16_t>(in[0] | (in[1] << 8));
}

std::uint64_t getU64(const std::uint8_t* in) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | in[i];
    }
    return v;
}

} // namespace

std::array<std::uint8_t, kFrameSize> encodeFrame(const Frame& frame) {
    std::array<std::uint8_t, kFrameSize> out{};
    out[0] = kFrameMagic;
    out[1] = static_cast<std::uint8_t>(frame.kind);
    putU16(out.data() + 2, frame.streamId);
    putU64(out.data() + 4, frame.tick);
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(frame.value));
    std::memcpy(&bits, &frame.value, sizeof(bits));
    putU64(out.data() + 12, bits);
    return out;
}

Frame decodeFrame(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kFrameSize) {
        throw FramingError("frame must be exactly 20 bytes");
    }
    if (bytes[0] != kFrameMagic) {
        throw FramingError("bad frame magic");
    }
    const std::uint8_t kind = bytes[1];
    if (kind < 0x01 || kind > 0x03) {
        throw FramingError("unknown frame kind");
    }
    Frame frame;
    frame.kind = static_cast<FrameKind>(kind);
    frame.streamId = getU16(bytes.data() + 2);
    frame.tick = getU64(bytes.data() + 4);
    const std::uint64_t bits = getU64(bytes.data() + 12);
    std::memcpy(&frame.value, &bits, sizeof(bits));
    return frame;
}

std::uint64_t inferTickDelta(double gapSeconds, double samplePeriod) {
    if (!(samplePeriod > 0.0)) {
        throw InvalidInputError("sample period must be positive");
    }
    const double ticks = std::round(gapSeconds / samplePeriod);
    return ticks < 1.0 ? 1 : static_cast<std::uint64_t>(ticks);
}

void InprocChannel::push(const Frame& frame) {
    {
        std::lock_guard lock(mutex_);
        queue_.push_back(frame);
    }
    cv_.notify_one();
}

std::optional<Frame> InprocChannel::pop() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return !queue_.empty() || closed_; });
    if (queue_.empty()) {
        return std::nullopt;
    }
    Frame f = queue_.front();
    queue_.pop_front();
    return f;
}

void InprocChannel::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    cv_.notify_one();
}

FrameSender::FrameSender(CompressorConfig config, std::uint16_t streamId,
                         std::function<void(const Frame&)> sink)
    : compressor_(config), streamId_(streamId), sink_(std::move(sink)) {}

void FrameSender::feed(double t) {
    const std::uint64_t tick = compressor_.ticksFed();
    const std::optional<EmittedEndpoint> emitted = compressor_.feed(t);
    if (!startSent_) {
        sink_(Frame{FrameKind::start, streamId_, tick, t});
        startSent_ = true;
    }
    if (emitted) {
        sink_(Frame{FrameKind::point, streamId_, emitted->tick, emitted->value});
    }
}

void FrameSender::finish() {
    if (finished_) {
        return;
    }
    finished_ = true;
    if (const std::optional<EmittedEndpoint> tail = compressor_.finish()) {
        sink_(Frame{FrameKind::point, streamId_, tail->tick, tail->value});
    }
    sink_(Frame{FrameKind::end, streamId_, compressor_.ticksFed(), 0.0});
}

FrameReceiver::FrameReceiver(Handlers handlers) : handlers_(std::move(handlers)) {}

void FrameReceiver::accept(const Frame& frame) {
    if (ended_) {
        throw ProtocolError("frame after END");
    }
    switch (frame.kind) {
    case FrameKind::start:
        if (started_) {
            throw ProtocolError("duplicate START");
        }
        started_ = true;
        lastTick_ = frame.tick;
        if (handlers_.onStart) {
            handlers_.onStart(frame.value, frame.tick);
        }
        break;
    case FrameKind::point:
        if (!started_) {
            throw ProtocolError("POINT before START");
        }
        if (sawPoint_ ? frame.tick <= lastTick_ : frame.tick < lastTick_) {
            throw ProtocolError("POINT tick out of order");
        }
        if (frame.tick == lastTick_ && !sawPoint_) {
            throw ProtocolError("POINT tick equals START tick");
        }
        sawPoint_ = true;
        lastTick_ = frame.tick;
        if (handlers_.onPoint) {
            handlers_.onPoint(frame.value, frame.tick);
        }
        break;
    case FrameKind::end:
        if (!started_) {
            throw ProtocolError("END without START");
        }
        ended_ = true;
        if (handlers_.onEnd) {
            handlers_.onEnd();
        }
        break;
    }
}

namespace tcp {

Connection Connection::connectTo(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const std::string portText = std::to_string(port);
    if (getaddrinfo(host.c_str(), portText.c_str(), &hints, &result) != 0) {
        throw ProtocolError("cannot resolve " + host);
    }
    int fd = -1;
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) {
            continue;
        }
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
            break;
        }
        ::close(fd);
        fd = -1;
    }
    freeaddrinfo(result);
    if (fd < 0) {
        throw ProtocolError("cannot connect to " + host + ":" + portText);
    }
    return Connection(fd);
}

Connection Connection::acceptOn(std::uint16_t port) {
    const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) {
        throw ProtocolError("cannot create listening socket");
    }
    const int one = 1;
    ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
        ::listen(listener, 1) != 0) {
        ::close(listener);
        throw ProtocolError("cannot listen on port " + std::to_string(port));
    }
    const int fd = ::accept(listener, nullptr, nullptr);
    ::close(listener);
    if (fd < 0) {
        throw ProtocolError("accept failed");
    }
    return Connection(fd);
}

Connection::Connection(Connection&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Connection& Connection::operator=(Connection&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) {
            ::close(fd_);
        }
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

Connection::~Connection() {
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

void Connection::sendFrame(const Frame& frame) {
    const auto bytes = encodeFrame(frame);
    std::size_t sent = 0;
    while (sent < bytes.size()) {
        const ssize_t n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, 0);
        if (n <= 0) {
            throw ProtocolError("socket send failed");
        }
        sent += static_cast<std::size_t>(n);
    }
}

std::optional<Frame> Connection::receiveFrame() {
    std::array<std::uint8_t, kFrameSize> bytes{};
    std::size_t got = 0;
    while (got < bytes.size()) {
        const ssize_t n = ::recv(fd_, bytes.data() + got, bytes.size() - got, 0);
        if (n == 0) {
            if (got == 0) {
                return std::nullopt;
            }
            throw FramingError("connection closed mid-frame");
        }
        if (n < 0) {
            throw ProtocolError("socket receive failed");
        }
        got += static_cast<std::size_t>(n);
    }
    return decodeFrame(bytes);
}

} // namespace tcp

} // namespace symed
