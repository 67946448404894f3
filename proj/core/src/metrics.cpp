#include "symed/metrics.hpp"
#include "symed/errors.hpp"

#include <algorithm>
#include <limits>

namespace symed {

double dtw(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw InvalidInputError("dtw needs non-empty sequences");
    }
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Rolling rows of the (n+1) x (m+1) accumulated-cost table.
    std::vector<double> prev(m + 1, inf), curr(m + 1, inf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        curr[0] = inf;
        for (std::size_t j = 1; j <= m; ++j) {
            const double d = a[i - 1] - b[j - 1];
            curr[j] = d * d + std::min({prev[j - 1], prev[j], curr[j - 1]});
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

double compressionRate(CompressionKind kind, std::size_t seriesLength, std::size_t symbolCount,
                       std::size_t centerCount, std::size_t pieceCount) {
    if (seriesLength == 0) {
        throw InvalidInputError("compression rate needs a non-empty series");
    }
    const double bytesT = 4.0 * static_cast<double>(seriesLength);
    if (kind == CompressionKind::abba) {
        const double bytesC = 8.0 * static_cast<double>(centerCount);
        const double bytesS = static_cast<double>(symbolCount);
        return (bytesC + bytesS) / bytesT;
    }
    // One transmitted float per piece: bytes(P) / 2 with 8-byte pieces.
    return 4.0 * static_cast<double>(pieceCount) / bytesT;
}

double dimensionReductionRate(std::size_t symbolCount, std::size_t seriesLength) {
    if (seriesLength == 0) {
        throw InvalidInputError("dimension reduction rate needs a non-empty series");
    }
    return static_cast<double>(symbolCount) / static_cast<double>(seriesLength);
}

std::optional<double> LatencyProbe::perSymbolMs() const {
    if (symbols_ == 0) {
        return std::nullopt;
    }
    return totalMs() / static_cast<double>(symbols_);
}

double LatencyProbe::totalMs() const {
    return std::chrono::duration<double, std::milli>(total_).count();
}

} // namespace symed
