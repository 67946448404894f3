#include "symed/reconstructor.hpp"
#include "symed/errors.hpp"

#include <cmath>

namespace symed {

std::vector<Piece> inverseDigitize(const SymbolString& symbols,
                                   const std::vector<Piece>& centers) {
    std::vector<Piece> out;
    out.reserve(symbols.labels.size());
    for (std::size_t l : symbols.labels) {
        if (l >= centers.size()) {
            throw InvalidInputError("symbol label out of range of center set");
        }
        out.push_back(centers[l]);
    }
    return out;
}

std::vector<std::size_t> quantizeLengths(const std::vector<double>& lens) {
    std::vector<std::size_t> out;
    out.reserve(lens.size());
    double carry = 0.0;
    for (double len : lens) {
        const double target = len + carry;
        double rounded = std::round(target); // half away from zero
        if (rounded < 1.0) {
            rounded = 1.0;
        }
        carry = target - rounded;
        out.push_back(static_cast<std::size_t>(rounded));
    }
    return out;
}

ReconstructedSeries inverseCompress(const std::vector<QuantizedPiece>& pieces,
                                    double startValue) {
    ReconstructedSeries series;
    series.startValue = startValue;
    series.values.push_back(startValue);
    double current = startValue;
    for (const QuantizedPiece& p : pieces) {
        for (std::size_t h = 1; h <= p.len; ++h) {
            series.values.push_back(current +
                                    p.inc * static_cast<double>(h) / static_cast<double>(p.len));
        }
        current += p.inc;
        // Pin the shared endpoint so successive pieces chain exactly.
        series.values.back() = current;
    }
    return series;
}

ReconstructedSeries reconstructFromSymbols(const SymbolString& symbols,
                                           const std::vector<Piece>& centers,
                                           double startValue) {
    const std::vector<Piece> lookedUp = inverseDigitize(symbols, centers);
    std::vector<double> lens;
    lens.reserve(lookedUp.size());
    for (const Piece& p : lookedUp) {
        lens.push_back(p.len);
    }
    const std::vector<std::size_t> quantized = quantizeLengths(lens);
    std::vector<QuantizedPiece> chain(lookedUp.size());
    for (std::size_t i = 0; i < lookedUp.size(); ++i) {
        chain[i] = {quantized[i], lookedUp[i].inc};
    }
    ReconstructedSeries series = inverseCompress(chain, startValue);
    series.sourceKind = SourceKind::fromSymbols;
    return series;
}

ReconstructedSeries reconstructFromPieces(const std::vector<Piece>& pieces, double startValue) {
    std::vector<QuantizedPiece> chain(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        chain[i] = {static_cast<std::size_t>(std::llround(pieces[i].len)), pieces[i].inc};
    }
    ReconstructedSeries series = inverseCompress(chain, startValue);
    series.sourceKind = SourceKind::fromPieces;
    return series;
}

} // namespace symed
