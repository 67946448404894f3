#include <doctest.h>

#include "symed/digitizer.hpp"
#include "symed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

using namespace symed;

namespace {

std::mt19937_64 freshRng(std::uint64_t seed = 0) { return std::mt19937_64(seed); }

// Partition signature: which pieces share a label, independent of the
// label values themselves.
std::vector<std::set<std::size_t>> partitionOf(const std::vector<std::size_t>& labels) {
    std::map<std::size_t, std::set<std::size_t>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        groups[labels[i]].insert(i);
    }
    std::vector<std::set<std::size_t>> out;
    for (auto& [label, members] : groups) {
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Exhaustive Lloyd oracle: run k-means from every k-subset of the points
// as initial centers and keep the assignment with the lowest total
// within-cluster cost.
struct OracleResult {
    std::vector<std::size_t> labels;
    double cost = 0.0;
};

OracleResult exhaustiveKmeans(const std::vector<Piece>& points, std::size_t k) {
    const std::size_t n = points.size();
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    OracleResult best;
    best.cost = std::numeric_limits<double>::infinity();
    do {
        std::vector<Piece> centers;
        for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) {
                centers.push_back(points[i]);
            }
        }
        std::vector<std::size_t> labels(n, 0);
        for (int iter = 0; iter < 100; ++iter) {
            bool changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t bestC = 0;
                double bestD = std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < k; ++c) {
                    const double dl = points[i].len - centers[c].len;
                    const double di = points[i].inc - centers[c].inc;
                    const double d = dl * dl + di * di;
                    if (d < bestD) {
                        bestD = d;
                        bestC = c;
                    }
                }
                if (bestC != labels[i]) {
                    labels[i] = bestC;
                    changed = true;
                }
            }
            if (!changed && iter > 0) {
                break;
            }
            std::vector<Piece> sums(k, Piece{0, 0});
            std::vector<std::size_t> sizes(k, 0);
            for (std::size_t i = 0; i < n; ++i) {
                sums[labels[i]].len += points[i].len;
                sums[labels[i]].inc += points[i].inc;
                ++sizes[labels[i]];
            }
            for (std::size_t c = 0; c < k; ++c) {
                if (sizes[c] > 0) {
                    centers[c] = {sums[c].len / static_cast<double>(sizes[c]),
                                  sums[c].inc / static_cast<double>(sizes[c])};
                }
            }
        }
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dl = points[i].len - centers[labels[i]].len;
            const double di = points[i].inc - centers[labels[i]].inc;
            cost += dl * dl + di * di;
        }
        if (cost < best.cost) {
            best.cost = cost;
            best.labels = labels;
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

} // namespace

TEST_CASE("symbol rendering covers both alphabets and the overflow token") {
    SymbolString s;
    s.labels = {0, 1, 25, 26, 51, 52, 100};
    CHECK(s.render() == "abzAZs<52>s<100>");
}

TEST_CASE("bootstrap branch: each piece becomes its own center") {
    const std::vector<Piece> pieces = {{3.0, 1.0}, {5.0, -2.0}};
    auto rng = freshRng();
    const DigitizeResult r = digitize(pieces, {}, {.tol = 0.4, .kMin = 3}, rng);
    CHECK(r.symbols.render() == "ab");
    CHECK(r.centers == pieces);
}

TEST_CASE("well-separated groups match the exhaustive k-means oracle") {
    // 12 pieces in 3 tight groups; separation far above tol.
    std::vector<Piece> pieces;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    const Piece anchors[3] = {{5.0, 10.0}, {20.0, -10.0}, {40.0, 25.0}};
    for (int g = 0; g < 3; ++g) {
        for (int i = 0; i < 4; ++i) {
            pieces.push_back({anchors[g].len + jitter(gen), anchors[g].inc + jitter(gen)});
        }
    }
    std::shuffle(pieces.begin(), pieces.end(), gen);

    // Feed pieces through the online path (bootstrap then warm k-means).
    Digitizer digitizer({.tol = 0.5, .scl = 1.0, .kMin = 3, .kMax = 100, .seed = 1});
    digitizer.start(0.0, 0);
    std::uint64_t tick = 0;
    double value = 0.0;
    for (const Piece& p : pieces) {
        tick += static_cast<std::uint64_t>(p.len);
        value += p.inc;
        digitizer.receive(value, tick);
    }
    CHECK(digitizer.centers().size() == 3);

    // Oracle works on the same standardized coordinates the digitizer uses.
    const PieceStandardization st = computeStandardization(digitizer.pieces(), 1.0);
    std::vector<Piece> std_pieces;
    for (const Piece& p : digitizer.pieces()) {
        std_pieces.push_back(st.apply(p));
    }
    const OracleResult oracle = exhaustiveKmeans(std_pieces, 3);
    CHECK(partitionOf(digitizer.symbols().labels) == partitionOf(oracle.labels));
}

TEST_CASE("scl=0 clusters on increments only") {
    // Lengths are wildly different inside each increment group; with
    // scl=0 they must not split the clusters.
    std::vector<Piece> pieces;
    const double lens[4] = {2.0, 50.0, 7.0, 31.0};
    for (int i = 0; i < 4; ++i) {
        pieces.push_back({lens[i], 10.0 + 0.01 * i});
        pieces.push_back({lens[3 - i], -10.0 - 0.01 * i});
    }
    auto rng = freshRng(2);
    const std::vector<Piece> warmCenters = {{5.0, 9.0}, {40.0, -9.0}};
    DigitizeResult r = digitize(pieces, warmCenters,
                                {.tol = 0.6, .scl = 0.0, .kMin = 2, .kMax = 10}, rng);
    const auto partition = partitionOf(r.symbols.labels);
    CHECK(partition.size() == 2);
    for (const auto& group : partition) {
        bool positive = pieces[*group.begin()].inc > 0;
        for (std::size_t i : group) {
            CHECK((pieces[i].inc > 0) == positive);
        }
    }
}

TEST_CASE("maxClusterVariance") {
    SUBCASE("zero when every piece sits on its center") {
        const std::vector<Piece> p = {{1, 1}, {2, 2}};
        CHECK(maxClusterVariance(p, p, {0, 1}, 1.0) == doctest::Approx(0.0));
    }
    SUBCASE("mean of squared distances within a cluster") {
        const std::vector<Piece> p = {{0, 0}, {0, 2}};
        const std::vector<Piece> c = {{0, 1}};
        CHECK(maxClusterVariance(p, c, {0, 0}, 1.0) == doctest::Approx(1.0));
    }
    SUBCASE("singleton clusters give zero") {
        const std::vector<Piece> p = {{1, 5}, {9, -3}, {4, 4}};
        CHECK(maxClusterVariance(p, p, {0, 1, 2}, 1.0) == doctest::Approx(0.0));
    }
}

TEST_CASE("receive constructs pieces from endpoint deltas") {
    Digitizer digitizer({.tol = 0.4, .kMin = 3});
    digitizer.start(5.0, 10);
    digitizer.receive(7.0, 14);
    REQUIRE(digitizer.pieces().size() == 1);
    CHECK(digitizer.pieces()[0] == Piece{4.0, 2.0});
}

TEST_CASE("non-increasing tick is a protocol error") {
    Digitizer digitizer({.tol = 0.4, .kMin = 3});
    digitizer.start(0.0, 0);
    digitizer.receive(1.0, 5);
    CHECK_THROWS_AS(digitizer.receive(2.0, 5), ProtocolError);
    CHECK_THROWS_AS(digitizer.receive(2.0, 3), ProtocolError);
}

TEST_CASE("receive before start: mode decides") {
    Digitizer strict({.tol = 0.4, .kMin = 3});
    CHECK_THROWS_AS(strict.receive(1.0, 5), ProtocolError);

    Digitizer zero({.tol = 0.4, .scl = 1.0, .kMin = 3, .kMax = 100, .seed = 0,
                    .firstPointMode = FirstPointMode::zero});
    zero.receive(1.0, 5); // implicit anchor at value 0, tick 0
    CHECK(zero.pieces()[0] == Piece{5.0, 1.0});
}

TEST_CASE("symbol string grows by exactly one per receive") {
    Digitizer digitizer({.tol = 0.3, .kMin = 3, .kMax = 20, .seed = 4});
    digitizer.start(0.0, 0);
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> incDist(-3.0, 3.0);
    std::uniform_int_distribution<std::uint64_t> lenDist(1, 12);
    std::uint64_t tick = 0;
    double value = 0.0;
    for (int i = 1; i <= 40; ++i) {
        tick += lenDist(gen);
        value += incDist(gen);
        const SymbolString& s = digitizer.receive(value, tick);
        CHECK(s.size() == static_cast<std::size_t>(i));
        CHECK(s.size() == digitizer.pieces().size());
    }
}

TEST_CASE("alphabet size stays within [min(kMin,|P|), min(kMax,|P|)]") {
    Digitizer digitizer({.tol = 0.2, .kMin = 3, .kMax = 6, .seed = 8});
    digitizer.start(0.0, 0);
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> incDist(-5.0, 5.0);
    std::uint64_t tick = 0;
    for (int i = 1; i <= 30; ++i) {
        tick += 3;
        const SymbolString& s = digitizer.receive(incDist(gen), tick);
        std::set<std::size_t> distinct(s.labels.begin(), s.labels.end());
        const std::size_t n = s.labels.size();
        CHECK(distinct.size() >= std::min<std::size_t>(3, n));
        CHECK(distinct.size() <= std::min<std::size_t>(6, n));
        CHECK(digitizer.centers().size() <= 6);
    }
}

TEST_CASE("warm start keeps centers put when the new piece sits on one") {
    std::vector<Piece> pieces = {{2, 1}, {10, -4}, {6, 8}, {2, 1}, {10, -4}, {6, 8}};
    const std::vector<Piece> centers = {{2, 1}, {10, -4}, {6, 8}};
    pieces.push_back(centers[0]); // newest piece coincides with a center
    auto rng = freshRng(3);
    const DigitizeResult r = digitize(pieces, centers, {.tol = 0.5, .kMin = 3, .kMax = 10}, rng);
    REQUIRE(r.centers.size() == 3);
    for (const Piece& c : centers) {
        bool found = false;
        for (const Piece& rc : r.centers) {
            if (std::abs(rc.len - c.len) < 1e-9 && std::abs(rc.inc - c.inc) < 1e-9) {
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("standardization round-trips within 1e-9") {
    const std::vector<Piece> pieces = {{3, 1.5}, {8, -2.25}, {5, 0.75}, {13, 4.0}};
    for (double scl : {1.0, 0.5, 3.0}) {
        const PieceStandardization st = computeStandardization(pieces, scl);
        for (const Piece& p : pieces) {
            const Piece back = st.invert(st.apply(p));
            CHECK(back.len == doctest::Approx(p.len).epsilon(1e-9));
            CHECK(back.inc == doctest::Approx(p.inc).epsilon(1e-9));
        }
    }
}

TEST_CASE("degenerate coordinates do not produce NaN") {
    // All lengths equal: zero spread on the len coordinate.
    const std::vector<Piece> pieces = {{4, 1}, {4, 2}, {4, 30}, {4, 31}};
    auto rng = freshRng(6);
    const DigitizeResult r = digitize(pieces, pieces, {.tol = 0.5, .kMin = 2, .kMax = 4}, rng);
    for (const Piece& c : r.centers) {
        CHECK(std::isfinite(c.len));
        CHECK(std::isfinite(c.inc));
    }
}

TEST_CASE("offline digitization") {
    SUBCASE("two pieces with kMin=3 fall back to k=|P|") {
        const std::vector<Piece> pieces = {{3, 1}, {5, -2}};
        const DigitizeResult r = digitizeOffline(pieces, {.tol = 0.4, .kMin = 3});
        CHECK(r.symbols.render() == "ab");
        CHECK(r.k == 2);
    }
    SUBCASE("identical pieces collapse to min(kMin, |P|) clusters") {
        const std::vector<Piece> pieces(5, Piece{4.0, 1.0});
        const DigitizeResult r = digitizeOffline(pieces, {.tol = 0.4, .kMin = 3});
        CHECK(r.k == 3);
        CHECK(r.symbols.size() == 5);
    }
    SUBCASE("clear groups resolve at kMin") {
        std::vector<Piece> pieces;
        for (int i = 0; i < 5; ++i) {
            pieces.push_back({5.0, 10.0});
            pieces.push_back({20.0, -10.0});
            pieces.push_back({40.0, 25.0});
        }
        const DigitizeResult r = digitizeOffline(pieces, {.tol = 0.5, .kMin = 3, .kMax = 100});
        CHECK(r.k == 3);
        CHECK(r.boundSatisfied);
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(Digitizer({.tol = 0.0}), InvalidInputError);
    CHECK_THROWS_AS(Digitizer({.tol = 0.4, .scl = -1.0}), InvalidInputError);
    CHECK_THROWS_AS(
        Digitizer({.tol = 0.4, .scl = std::numeric_limits<double>::infinity()}),
        InvalidInputError);
    CHECK_THROWS_AS(Digitizer({.tol = 0.4, .scl = 1.0, .kMin = 5, .kMax = 3}),
                    InvalidInputError);
}
