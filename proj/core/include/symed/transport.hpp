#pragma once

#include "symed/compressor.hpp"
#include "symed/errors.hpp"

#include <array>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>

namespace symed {

enum class FrameKind : std::uint8_t { start = 0x01, point = 0x02, end = 0x03 };

/// Fixed 20-byte wire message: magic 0x53, kind, stream id (u16 LE),
/// tick (u64 LE), value (f64 LE).
struct Frame {
    FrameKind kind = FrameKind::point;
    std::uint16_t streamId = 0;
    std::uint64_t tick = 0;
    double value = 0.0;

    bool operator==(const Frame&) const = default;
};

inline constexpr std::size_t kFrameSize = 20;
inline constexpr std::uint8_t kFrameMagic = 0x53;

std::array<std::uint8_t, kFrameSize> encodeFrame(const Frame& frame);

/// Throws FramingError on short input, bad magic, or unknown kind.
Frame decodeFrame(std::span<const std::uint8_t> bytes);

/// Wall-clock length inference: a gap of d seconds at the given sample
/// period spans round(d / period) ticks (at least 1).
std::uint64_t inferTickDelta(double gapSeconds, double samplePeriod);

/// Single-producer single-consumer ordered frame queue; the in-process
/// channel between sender and receiver threads.
class InprocChannel {
public:
    void push(const Frame& frame);
    /// Blocks until a frame arrives or the producer closed the channel.
    std::optional<Frame> pop();
    void close();

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<Frame> queue_;
    bool closed_ = false;
};

/// Drives a Compressor and turns its emissions into frames: START with
/// the anchor point, one POINT per emitted endpoint, END at finish.
class FrameSender {
public:
    FrameSender(CompressorConfig config, std::uint16_t streamId,
                std::function<void(const Frame&)> sink);

    void feed(double t);
    /// Flushes the trailing open segment and emits END.
    void finish();

private:
    Compressor compressor_;
    std::uint16_t streamId_;
    std::function<void(const Frame&)> sink_;
    bool startSent_ = false;
    bool finished_ = false;
};

/// Validates frame order and hands (value, tick) pairs to a handler.
/// Enforces: START first, strictly increasing POINT ticks, clean END.
class FrameReceiver {
public:
    struct Handlers {
        std::function<void(double t0, std::uint64_t tick0)> onStart;
        std::function<void(double value, std::uint64_t tick)> onPoint;
        std::function<void()> onEnd;
    };

    explicit FrameReceiver(Handlers handlers);

    void accept(const Frame& frame);
    bool ended() const { return ended_; }

private:
    Handlers handlers_;
    bool started_ = false;
    bool ended_ = false;
    bool sawPoint_ = false;
    std::uint64_t lastTick_ = 0;
};

/// Blocking TCP helpers for the send/serve CLI verbs. Both sides speak
/// the 20-byte frame format over a reliable ordered byte stream.
namespace tcp {

/// Connects to host:port and returns a sink that writes frames.
/// The returned object closes the socket on destruction.
class Connection {
public:
    static Connection connectTo(const std::string& host, std::uint16_t port);
    static Connection acceptOn(std::uint16_t port);

    Connection(Connection&& other) noexcept;
    Connection& operator=(Connection&&) noexcept;
    Connection(const Connection&) = delete;
    Connection& operator=(const Connection&) = delete;
    ~Connection();

    void sendFrame(const Frame& frame);
    /// Returns nothing on orderly peer close at a frame boundary.
    std::optional<Frame> receiveFrame();

private:
    explicit Connection(int fd) : fd_(fd) {}
    int fd_ = -1;
};

} // namespace tcp

} // namespace symed
