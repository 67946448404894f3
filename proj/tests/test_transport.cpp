#include <doctest.h>

#include "symed/digitizer.hpp"
#include "symed/errors.hpp"
#include "symed/transport.hpp"

#include <random>
#include <thread>
#include <vector>

using namespace symed;

TEST_CASE("frame layout is bit-exact") {
    const Frame f{FrameKind::start, 1, 0, 0.0};
    const auto bytes = encodeFrame(f);
    const std::array<std::uint8_t, kFrameSize> expected = {
        0x53, 0x01, 0x01, 0x00,                         // magic, kind, streamId LE
        0, 0, 0, 0, 0, 0, 0, 0,                         // tick
        0, 0, 0, 0, 0, 0, 0, 0};                        // value 0.0
    CHECK(bytes == expected);
}

TEST_CASE("codec round-trips random frames") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> kindDist(1, 3);
    std::uniform_int_distribution<std::uint16_t> idDist;
    std::uniform_int_distribution<std::uint64_t> tickDist;
    std::normal_distribution<double> valueDist(0.0, 1e6);
    for (int i = 0; i < 1000; ++i) {
        Frame f;
        f.kind = static_cast<FrameKind>(kindDist(rng));
        f.streamId = idDist(rng);
        f.tick = tickDist(rng);
        f.value = valueDist(rng);
        CHECK(decodeFrame(encodeFrame(f)) == f);
    }
}

TEST_CASE("malformed frames raise framing errors") {
    const auto good = encodeFrame({FrameKind::point, 0, 1, 2.0});

    std::vector<std::uint8_t> truncated(good.begin(), good.end() - 1);
    CHECK_THROWS_AS(decodeFrame(truncated), FramingError);

    auto badMagic = good;
    badMagic[0] = 0x00;
    CHECK_THROWS_AS(decodeFrame(badMagic), FramingError);

    auto badKind = good;
    badKind[1] = 0x09;
    CHECK_THROWS_AS(decodeFrame(badKind), FramingError);
}

TEST_CASE("wall-clock tick inference") {
    CHECK(inferTickDelta(0.04, 0.01) == 4);
    CHECK(inferTickDelta(0.012, 0.01) == 1);
    CHECK(inferTickDelta(0.0, 0.01) == 1); // never stalls the clock
    CHECK_THROWS_AS(inferTickDelta(0.1, 0.0), InvalidInputError);
}

TEST_CASE("receiver turns ordered endpoints into pieces") {
    Digitizer digitizer({.tol = 0.4, .kMin = 3});
    FrameReceiver receiver({
        [&](double t0, std::uint64_t tick0) { digitizer.start(t0, tick0); },
        [&](double v, std::uint64_t t) { digitizer.receive(v, t); },
        nullptr,
    });
    receiver.accept({FrameKind::start, 0, 0, 5.0});
    receiver.accept({FrameKind::point, 0, 10, 5.0});
    receiver.accept({FrameKind::point, 0, 14, 7.0});
    receiver.accept({FrameKind::end, 0, 14, 0.0});
    REQUIRE(digitizer.pieces().size() == 2);
    CHECK(digitizer.pieces()[1] == Piece{4.0, 2.0});
    CHECK(receiver.ended());
}

TEST_CASE("protocol violations") {
    SUBCASE("END without START") {
        FrameReceiver r({});
        CHECK_THROWS_AS(r.accept({FrameKind::end, 0, 0, 0.0}), ProtocolError);
    }
    SUBCASE("POINT before START") {
        FrameReceiver r({});
        CHECK_THROWS_AS(r.accept({FrameKind::point, 0, 1, 0.0}), ProtocolError);
    }
    SUBCASE("out-of-order POINT ticks") {
        FrameReceiver r({});
        r.accept({FrameKind::start, 0, 0, 0.0});
        r.accept({FrameKind::point, 0, 5, 1.0});
        CHECK_THROWS_AS(r.accept({FrameKind::point, 0, 5, 2.0}), ProtocolError);
        CHECK_THROWS_AS(r.accept({FrameKind::point, 0, 4, 2.0}), ProtocolError);
    }
    SUBCASE("duplicate START") {
        FrameReceiver r({});
        r.accept({FrameKind::start, 0, 0, 0.0});
        CHECK_THROWS_AS(r.accept({FrameKind::start, 0, 0, 0.0}), ProtocolError);
    }
}

TEST_CASE("inproc channel preserves order across threads") {
    InprocChannel channel;
    std::vector<Frame> received;
    std::thread consumer([&] {
        while (auto f = channel.pop()) {
            received.push_back(*f);
        }
    });
    for (std::uint64_t i = 0; i < 500; ++i) {
        channel.push({FrameKind::point, 0, i, static_cast<double>(i)});
    }
    channel.close();
    consumer.join();
    REQUIRE(received.size() == 500);
    for (std::uint64_t i = 0; i < 500; ++i) {
        CHECK(received[i].tick == i);
    }
}

TEST_CASE("tcp loopback carries frames") {
    constexpr std::uint16_t port = 39471;
    std::vector<Frame> received;
    std::thread server([&] {
        auto conn = tcp::Connection::acceptOn(port);
        while (auto f = conn.receiveFrame()) {
            received.push_back(*f);
            if (f->kind == FrameKind::end) {
                break;
            }
        }
    });
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    {
        auto conn = tcp::Connection::connectTo("127.0.0.1", port);
        conn.sendFrame({FrameKind::start, 7, 0, 1.5});
        conn.sendFrame({FrameKind::point, 7, 4, -2.5});
        conn.sendFrame({FrameKind::end, 7, 4, 0.0});
    }
    server.join();
    REQUIRE(received.size() == 3);
    CHECK(received[0] == Frame{FrameKind::start, 7, 0, 1.5});
    CHECK(received[1] == Frame{FrameKind::point, 7, 4, -2.5});
    CHECK(received[2].kind == FrameKind::end);
}
