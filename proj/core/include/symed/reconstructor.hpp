#pragma once

#include "symed/digitizer.hpp"

#include <vector>

namespace symed {

enum class SourceKind { fromSymbols, fromPieces };

struct ReconstructedSeries {
    std::vector<double> values;
    double startValue = 0.0;
    SourceKind sourceKind = SourceKind::fromPieces;
};

/// Symbol -> center lookup: piece i gets the (len, inc) coordinates of
/// the center its symbol maps to.
std::vector<Piece> inverseDigitize(const SymbolString& symbols, const std::vector<Piece>& centers);

/// Error-carrying rounding of real-valued lengths to whole ticks
/// (half away from zero). Each result is clamped to >= 1; the clamp
/// deficit flows into the carry.
std::vector<std::size_t> quantizeLengths(const std::vector<double>& lens);

struct QuantizedPiece {
    std::size_t len = 0;
    double inc = 0.0;
};

/// Linear interpolation along the chain of pieces from startValue.
ReconstructedSeries inverseCompress(const std::vector<QuantizedPiece>& pieces, double startValue);

/// Full symbol path: inverse-digitization, quantization, inverse-compression.
ReconstructedSeries reconstructFromSymbols(const SymbolString& symbols,
                                           const std::vector<Piece>& centers, double startValue);

/// Direct path from the receiver's own pieces; lengths are already whole.
ReconstructedSeries reconstructFromPieces(const std::vector<Piece>& pieces, double startValue);

} // namespace symed
