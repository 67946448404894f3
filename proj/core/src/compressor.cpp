#include "symed/compressor.hpp"
#include "symed/errors.hpp"

#include <cmath>

namespace symed {

namespace {

double effectiveTol(const double tol, const BoundMode mode) {
    return mode == BoundMode::squared ? tol * tol : tol;
}

} // namespace

double fitError(const std::vector<double>& segment) {
    const std::size_t n = segment.size();
    if (n < 2) {
        return 0.0;
    }
    const double first = segment.front();
    const double last = segment.back();
    const double m = static_cast<double>(n - 1);
    double err = 0.0;
    // Endpoints sit on the chord by definition; only interior points
    // contribute (and must not pick up spurious rounding residue).
    for (std::size_t h = 1; h + 1 < n; ++h) {
        const double lineValue = first + (last - first) * static_cast<double>(h) / m;
        const double r = lineValue - segment[h];
        err += r * r;
    }
    return err;
}

Compressor::Compressor(CompressorConfig config)
    : config_(config), normalizer_(config.alpha) {
    if (!(config_.tol > 0.0)) {
        throw InvalidInputError("compressor tol must be positive");
    }
    if (config_.lenMax < 2) {
        throw InvalidInputError("compressor lenMax must be >= 2");
    }
}

std::optional<EmittedEndpoint> Compressor::feed(double t) {
    if (!std::isfinite(t)) {
        throw StreamCorruptionError("non-finite value fed to compressor");
    }
    const std::uint64_t tick = nextTick_++;
    normalizer_.update(t);
    if (buffer_.empty()) {
        // Stream anchor t0; transmitted via the START frame, not as a segment.
        buffer_.push_back(t);
        startTick_ = tick;
        return std::nullopt;
    }
    buffer_.push_back(t);

    const std::size_t lenTs = buffer_.size();
    const double err = fitError(normalizer_.standardizeSegment(buffer_));
    const double bound =
        (static_cast<double>(lenTs) - 2.0) * effectiveTol(config_.tol, config_.boundMode);
    if (err <= bound && lenTs <= config_.lenMax) {
        return std::nullopt;
    }

    // The newest point violated a bound; the segment ends one point earlier
    // and the buffer restarts from its last two elements.
    EmittedEndpoint out;
    out.value = buffer_[lenTs - 2];
    out.tick = startTick_ + static_cast<std::uint64_t>(lenTs - 2);
    buffer_ = {buffer_[lenTs - 2], buffer_[lenTs - 1]};
    startTick_ = out.tick;
    return out;
}

std::optional<EmittedEndpoint> Compressor::finish() const {
    if (buffer_.size() < 2) {
        return std::nullopt;
    }
    EmittedEndpoint out;
    out.value = buffer_.back();
    out.tick = startTick_ + static_cast<std::uint64_t>(buffer_.size() - 1);
    return out;
}

std::vector<Piece> compressOffline(const std::vector<double>& series, double tol,
                                   std::size_t lenMax, BoundMode boundMode) {
    if (series.size() < 2) {
        throw InvalidInputError("offline compression needs at least 2 points");
    }
    if (!(tol > 0.0)) {
        throw InvalidInputError("tol must be positive");
    }
    const double tolEff = effectiveTol(tol, boundMode);

    std::vector<Piece> pieces;
    std::size_t start = 0;
    std::vector<double> segment = {series[0]};
    for (std::size_t j = 1; j < series.size(); ++j) {
        segment.push_back(series[j]);
        const std::size_t pts = segment.size();
        const double bound = (static_cast<double>(pts) - 2.0) * tolEff;
        if (fitError(segment) > bound || pts > lenMax) {
            const std::size_t end = j - 1;
            pieces.push_back({static_cast<double>(end - start), series[end] - series[start]});
            start = end;
            segment = {series[end], series[j]};
        }
    }
    pieces.push_back(
        {static_cast<double>(series.size() - 1 - start), series.back() - series[start]});
    return pieces;
}

} // namespace symed
