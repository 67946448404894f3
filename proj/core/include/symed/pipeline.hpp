#pragma once

#include "symed/compressor.hpp"
#include "symed/digitizer.hpp"
#include "symed/metrics.hpp"
#include "symed/reconstructor.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace symed {

/// Everything one end-to-end run needs; shared by the CLI, the
/// experiment sweep, and the test suites.
struct RunConfig {
    double tol = 0.5;
    double alpha = 0.01;
    double scl = 1.0;
    std::size_t kMin = 3;
    std::size_t kMax = 100;
    std::size_t lenMax = std::numeric_limits<std::size_t>::max();
    std::uint64_t seed = 0;
    BoundMode boundMode = BoundMode::paper;
    FirstPointMode firstPointMode = FirstPointMode::startFrame;

    CompressorConfig compressor() const { return {tol, lenMax, alpha, boundMode}; }
    DigitizerConfig digitizer() const { return {tol, scl, kMin, kMax, seed, firstPointMode}; }
};

struct SymedRunResult {
    std::vector<Piece> pieces;
    std::vector<Piece> centers;
    SymbolString symbols;
    double startValue = 0.0;
    std::optional<double> latSenderMs;
    std::optional<double> latReceiverMs;
};

/// Runs the full sender+receiver pipeline in one thread via direct
/// frame handoff. Deterministic for a fixed config and seed.
SymedRunResult runSymedMonolithic(const std::vector<double>& series, const RunConfig& config);

/// Same pipeline with sender and receiver on separate threads joined by
/// the in-process channel; produces bit-identical pieces, centers, and
/// symbols to the monolithic run.
SymedRunResult runSymedThreaded(const std::vector<double>& series, const RunConfig& config);

struct AbbaRunResult {
    std::vector<Piece> pieces; // in globally normalized units
    std::vector<Piece> centers;
    SymbolString symbols;
    double mean = 0.0; // global normalization parameters
    double std = 1.0;
    double normalizedStart = 0.0;
    double totalMs = 0.0;
};

/// Offline ABBA baseline: global z-normalization, batch compression,
/// batch digitization.
AbbaRunResult runAbbaOffline(const std::vector<double>& series, const RunConfig& config);

/// Reconstructions in raw data space.
std::vector<double> symedReconstructFromPieces(const SymedRunResult& run);
std::vector<double> symedReconstructFromSymbols(const SymedRunResult& run);
std::vector<double> abbaReconstructFromSymbols(const AbbaRunResult& run);
std::vector<double> abbaReconstructFromPieces(const AbbaRunResult& run);

} // namespace symed
