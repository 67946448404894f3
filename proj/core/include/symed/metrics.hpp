#pragma once

#include "symed/digitizer.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace symed {

/// Dynamic time warping distance with squared local cost and unit
/// steps (match, insert, delete); full window, accumulated cost.
double dtw(const std::vector<double>& a, const std::vector<double>& b);

enum class CompressionKind { abba, symed };

/// Eq.-style byte accounting with the 4-bytes-per-float convention:
/// abba transmits centers (2 floats each) plus one byte per symbol;
/// symed transmits one float per piece.
double compressionRate(CompressionKind kind, std::size_t seriesLength, std::size_t symbolCount,
                       std::size_t centerCount, std::size_t pieceCount);

double dimensionReductionRate(std::size_t symbolCount, std::size_t seriesLength);

/// Accumulates wall time for one pipeline section and reports it per
/// produced symbol. Reports nothing when no symbols were produced.
class LatencyProbe {
public:
    void addSample(std::chrono::steady_clock::duration elapsed) { total_ += elapsed; }
    void addSymbols(std::size_t n) { symbols_ += n; }

    std::optional<double> perSymbolMs() const;
    double totalMs() const;

    /// RAII section timer feeding this probe.
    class Scope {
    public:
        explicit Scope(LatencyProbe& probe)
            : probe_(probe), begin_(std::chrono::steady_clock::now()) {}
        ~Scope() { probe_.addSample(std::chrono::steady_clock::now() - begin_); }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        LatencyProbe& probe_;
        std::chrono::steady_clock::time_point begin_;
    };

private:
    std::chrono::steady_clock::duration total_{};
    std::size_t symbols_ = 0;
};

/// One evaluation row: a (series, tolerance, algorithm) cell.
struct RunRecord {
    std::string dataset;
    std::string seriesId;
    std::string algo; // "symed" or "abba"
    double tol = 0.0;
    double alpha = 0.0;
    double scl = 0.0;
    std::size_t nSymbols = 0;
    double reSymbols = 0.0;
    double rePieces = 0.0; // symed only; NaN for abba
    double cr = 0.0;
    double drr = 0.0;
    std::optional<double> latSenderMs;
    std::optional<double> latReceiverMs;
    std::optional<double> totalMs; // offline runs report one total
};

} // namespace symed
