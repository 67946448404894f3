#include "symed/digitizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace symed {

std::string SymbolString::render() const {
    std::string out;
    for (std::size_t l : labels) {
        if (l < 26) {
            out += static_cast<char>('a' + l);
        } else if (l < 52) {
            out += static_cast<char>('A' + (l - 26));
        } else {
            out += "s<" + std::to_string(l) + ">";
        }
    }
    return out;
}

Piece PieceStandardization::apply(const Piece& p) const {
    return {scl * (p.len - meanLen) / stdLen, (p.inc - meanInc) / stdInc};
}

Piece PieceStandardization::invert(const Piece& p) const {
    const double len = scl > 0.0 ? p.len / scl * stdLen + meanLen : meanLen;
    return {len, p.inc * stdInc + meanInc};
}

PieceStandardization computeStandardization(const std::vector<Piece>& pieces, double scl) {
    PieceStandardization st;
    st.scl = scl;
    const double n = static_cast<double>(pieces.size());
    if (pieces.empty()) {
        return st;
    }
    for (const Piece& p : pieces) {
        st.meanLen += p.len;
        st.meanInc += p.inc;
    }
    st.meanLen /= n;
    st.meanInc /= n;
    double varLen = 0.0, varInc = 0.0;
    for (const Piece& p : pieces) {
        varLen += (p.len - st.meanLen) * (p.len - st.meanLen);
        varInc += (p.inc - st.meanInc) * (p.inc - st.meanInc);
    }
    st.stdLen = std::sqrt(varLen / n);
    st.stdInc = std::sqrt(varInc / n);
    // A single-valued coordinate would divide by zero; leave it unscaled.
    if (st.stdLen <= 0.0) st.stdLen = 1.0;
    if (st.stdInc <= 0.0) st.stdInc = 1.0;
    return st;
}

namespace {

double squaredDistance(const Piece& a, const Piece& b, bool useLen) {
    const double di = a.inc - b.inc;
    if (!useLen) {
        return di * di;
    }
    const double dl = a.len - b.len;
    return dl * dl + di * di;
}

struct KmeansOutcome {
    std::vector<Piece> centers;
    std::vector<std::size_t> labels;
};

std::size_t nearestCenter(const Piece& p, const std::vector<Piece>& centers, bool useLen) {
    std::size_t best = 0;
    double bestDist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = squaredDistance(p, centers[c], useLen);
        if (d < bestDist) {
            bestDist = d;
            best = c;
        }
    }
    return best;
}

// Lloyd's iterations; converges when assignments stop changing or after
// 100 rounds. An empty cluster is reseeded at the point farthest from
// its currently assigned center.
KmeansOutcome kmeans(const std::vector<Piece>& points, std::vector<Piece> centers, bool useLen) {
    const std::size_t n = points.size();
    const std::size_t k = centers.size();
    std::vector<std::size_t> labels(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = iter == 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = nearestCenter(points[i], centers, useLen);
            if (c != labels[i]) {
                labels[i] = c;
                changed = true;
            }
        }
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t l : labels) {
            ++sizes[l];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] > 0) {
                continue;
            }
            std::size_t farthest = 0;
            double farthestDist = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[labels[i]] <= 1) {
                    continue;
                }
                const double d = squaredDistance(points[i], centers[labels[i]], useLen);
                if (d > farthestDist) {
                    farthestDist = d;
                    farthest = i;
                }
            }
            --sizes[labels[farthest]];
            labels[farthest] = c;
            sizes[c] = 1;
            changed = true;
        }
        if (!changed) {
            break;
        }
        std::vector<Piece> sums(k, Piece{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            sums[labels[i]].len += points[i].len;
            sums[labels[i]].inc += points[i].inc;
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] > 0) {
                centers[c] = {sums[c].len / static_cast<double>(sizes[c]),
                              sums[c].inc / static_cast<double>(sizes[c])};
            }
        }
    }
    return {std::move(centers), std::move(labels)};
}

std::vector<Piece> samplePieces(const std::vector<Piece>& pool, std::size_t k,
                                std::mt19937_64& rng) {
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<Piece> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k && i < idx.size(); ++i) {
        out.push_back(pool[idx[i]]);
    }
    return out;
}

// Restore center coordinates to raw units. With 1-D clustering the length
// coordinate carries no information, so it is recomputed as the mean
// length of the cluster members.
std::vector<Piece> destandardizeCenters(const std::vector<Piece>& centersStd,
                                        const std::vector<Piece>& pieces,
                                        const std::vector<std::size_t>& labels,
                                        const PieceStandardization& st) {
    std::vector<Piece> out(centersStd.size());
    for (std::size_t c = 0; c < centersStd.size(); ++c) {
        out[c] = st.invert(centersStd[c]);
    }
    if (st.scl > 0.0) {
        return out;
    }
    std::vector<double> lenSum(centersStd.size(), 0.0);
    std::vector<std::size_t> sizes(centersStd.size(), 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        lenSum[labels[i]] += pieces[i].len;
        ++sizes[labels[i]];
    }
    for (std::size_t c = 0; c < out.size(); ++c) {
        if (sizes[c] > 0) {
            out[c].len = lenSum[c] / static_cast<double>(sizes[c]);
        }
    }
    return out;
}

} // namespace

double maxClusterVariance(const std::vector<Piece>& pieces, const std::vector<Piece>& centers,
                          const std::vector<std::size_t>& labels, double scl) {
    const bool useLen = scl != 0.0;
    std::vector<double> sums(centers.size(), 0.0);
    std::vector<std::size_t> sizes(centers.size(), 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        sums[labels[i]] += squaredDistance(pieces[i], centers[labels[i]], useLen);
        ++sizes[labels[i]];
    }
    double worst = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        if (sizes[c] == 0) {
            continue; // empty clusters do not participate
        }
        worst = std::max(worst, sums[c] / static_cast<double>(sizes[c]));
    }
    return worst;
}

DigitizeResult digitize(const std::vector<Piece>& pieces, const std::vector<Piece>& centers,
                        const DigitizerConfig& config, std::mt19937_64& rng) {
    if (pieces.empty()) {
        throw InvalidInputError("digitize needs at least one piece");
    }
    const std::size_t n = pieces.size();

    if (centers.size() < config.kMin) {
        // Bootstrap: every piece is its own center.
        DigitizeResult result;
        result.centers = pieces;
        result.symbols.labels.resize(n);
        std::iota(result.symbols.labels.begin(), result.symbols.labels.end(), std::size_t{0});
        result.k = n;
        result.boundSatisfied = true;
        return result;
    }

    const PieceStandardization st = computeStandardization(pieces, config.scl);
    std::vector<Piece> piecesStd(n);
    for (std::size_t i = 0; i < n; ++i) {
        piecesStd[i] = st.apply(pieces[i]);
    }
    std::vector<Piece> centersInit(centers.size());
    for (std::size_t c = 0; c < centers.size(); ++c) {
        centersInit[c] = st.apply(centers[c]);
    }

    const bool useLen = config.scl != 0.0;
    const double bound = config.tol * config.tol;
    const std::size_t kOld = centers.size();
    std::size_t k = kOld - 1;
    double err = std::numeric_limits<double>::infinity();
    KmeansOutcome best;
    bool ran = false;
    while (k < config.kMax && k < n && err > bound) {
        ++k;
        if (k == kOld + 1) {
            centersInit.push_back(piecesStd.back());
        } else if (k > kOld + 1) {
            centersInit = samplePieces(piecesStd, k, rng);
        }
        best = kmeans(piecesStd, centersInit, useLen);
        err = maxClusterVariance(piecesStd, best.centers, best.labels, config.scl);
        ran = true;
    }
    if (!ran) {
        // Warm centers already at a cap; cluster once without growing k.
        if (centersInit.size() > n) {
            centersInit.resize(n);
        }
        k = centersInit.size();
        best = kmeans(piecesStd, centersInit, useLen);
        err = maxClusterVariance(piecesStd, best.centers, best.labels, config.scl);
    }

    DigitizeResult result;
    result.centers = destandardizeCenters(best.centers, pieces, best.labels, st);
    result.symbols.labels = std::move(best.labels);
    result.k = k;
    result.boundSatisfied = err <= bound;
    return result;
}

DigitizeResult digitizeOffline(const std::vector<Piece>& pieces, const DigitizerConfig& config) {
    if (pieces.empty()) {
        throw InvalidInputError("digitize needs at least one piece");
    }
    const std::size_t n = pieces.size();
    const PieceStandardization st = computeStandardization(pieces, config.scl);
    std::vector<Piece> piecesStd(n);
    for (std::size_t i = 0; i < n; ++i) {
        piecesStd[i] = st.apply(pieces[i]);
    }

    const bool useLen = config.scl != 0.0;
    const double bound = config.tol * config.tol;
    const std::size_t kStart = std::min(config.kMin, n);
    const std::size_t kCap = std::min(config.kMax, n);
    std::mt19937_64 rng(config.seed);

    KmeansOutcome best;
    std::size_t kUsed = kStart;
    double err = std::numeric_limits<double>::infinity();
    for (std::size_t k = kStart; k <= kCap; ++k) {
        best = kmeans(piecesStd, samplePieces(piecesStd, k, rng), useLen);
        err = maxClusterVariance(piecesStd, best.centers, best.labels, config.scl);
        kUsed = k;
        if (err <= bound) {
            break;
        }
    }

    // Canonical labeling: clusters are numbered by first appearance, so
    // the first piece always renders as 'a'.
    std::vector<std::size_t> remap(kUsed, kUsed);
    std::size_t next = 0;
    for (std::size_t l : best.labels) {
        if (remap[l] == kUsed) {
            remap[l] = next++;
        }
    }
    std::vector<Piece> centersRaw = destandardizeCenters(best.centers, pieces, best.labels, st);
    std::vector<Piece> centersOrdered(centersRaw.size());
    for (std::size_t c = 0; c < centersRaw.size(); ++c) {
        centersOrdered[remap[c] == kUsed ? c : remap[c]] = centersRaw[c];
    }
    DigitizeResult result;
    result.centers = std::move(centersOrdered);
    result.symbols.labels.reserve(best.labels.size());
    for (std::size_t l : best.labels) {
        result.symbols.labels.push_back(remap[l]);
    }
    result.k = kUsed;
    result.boundSatisfied = err <= bound;
    return result;
}

Digitizer::Digitizer(DigitizerConfig config) : config_(config), rng_(config.seed) {
    if (!(config_.tol > 0.0)) {
        throw InvalidInputError("digitizer tol must be positive");
    }
    if (!(config_.scl >= 0.0) || !std::isfinite(config_.scl)) {
        throw InvalidInputError("digitizer scl must be finite and >= 0");
    }
    if (config_.kMin < 1 || config_.kMax < config_.kMin) {
        throw InvalidInputError("digitizer needs 1 <= kMin <= kMax");
    }
}

void Digitizer::start(double t0, std::uint64_t tick0) {
    startValue_ = t0;
    lastValue_ = t0;
    lastTick_ = tick0;
    started_ = true;
}

const SymbolString& Digitizer::receive(double value, std::uint64_t tick) {
    if (!started_) {
        if (config_.firstPointMode == FirstPointMode::zero) {
            start(0.0, 0);
        } else {
            throw ProtocolError("endpoint received before stream start");
        }
    }
    if (tick <= lastTick_) {
        throw ProtocolError("endpoint tick did not advance");
    }
    pieces_.push_back({static_cast<double>(tick - lastTick_), value - lastValue_});
    DigitizeResult result = digitize(pieces_, centers_, config_, rng_);
    centers_ = std::move(result.centers);
    symbols_ = std::move(result.symbols);
    lastValue_ = value;
    lastTick_ = tick;
    return symbols_;
}

} // namespace symed
