#pragma once

#include "symed/normalizer.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace symed {

/// How the growth bound is computed from the tolerance.
/// `paper` uses (len_ts - 2) * tol; `squared` uses (len_ts - 2) * tol^2
/// (the convention of the offline ABBA lineage).
enum class BoundMode { paper, squared };

struct CompressorConfig {
    double tol = 0.5;
    std::size_t lenMax = std::numeric_limits<std::size_t>::max();
    double alpha = 0.01;
    BoundMode boundMode = BoundMode::paper;
};

/// One linear segment of the polygonal chain: length in ticks plus the
/// value increment over the segment.
struct Piece {
    double len = 0.0;
    double inc = 0.0;

    bool operator==(const Piece&) const = default;
};

/// Segment endpoint released by the sender, tagged with the logical
/// sample index of that point.
struct EmittedEndpoint {
    double value = 0.0;
    std::uint64_t tick = 0;

    bool operator==(const EmittedEndpoint&) const = default;
};

/// Squared Euclidean distance between a segment and the straight line
/// through its first and last points, sampled at integer positions.
double fitError(const std::vector<double>& segment);

/// Sender-side online compression. Values are fed one at a time; an
/// endpoint pops out whenever growing the current segment would push
/// its standardized fit error past (len - 2) * tol or its length past
/// lenMax. The buffer then restarts from the last two raw points.
class Compressor {
public:
    explicit Compressor(CompressorConfig config);

    /// Feeds the next raw value. Returns the finished segment's endpoint
    /// when a boundary is hit, nothing otherwise. The first fed value is
    /// the stream anchor t0 and never triggers an emission.
    std::optional<EmittedEndpoint> feed(double t);

    /// Endpoint of the still-open trailing segment (the newest buffered
    /// point). Present once at least two points were fed since the last
    /// emission covers it; used to close out a finite stream.
    std::optional<EmittedEndpoint> finish() const;

    const CompressorConfig& config() const { return config_; }
    const Normalizer& normalizer() const { return normalizer_; }
    std::uint64_t ticksFed() const { return nextTick_; }

private:
    CompressorConfig config_;
    Normalizer normalizer_;
    std::vector<double> buffer_;
    std::uint64_t startTick_ = 0; // tick of buffer_[0]
    std::uint64_t nextTick_ = 0;
};

/// Offline batch compression (the ABBA baseline): greedily grows each
/// piece until the fit error exceeds (len - 1) * tol or len reaches
/// lenMax. The caller normalizes the series beforehand.
std::vector<Piece> compressOffline(const std::vector<double>& series, double tol,
                                   std::size_t lenMax = std::numeric_limits<std::size_t>::max(),
                                   BoundMode boundMode = BoundMode::paper);

} // namespace symed
