#pragma once

#include "symed/compressor.hpp"
#include "symed/errors.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace symed {

/// How the first piece is anchored: against the transmitted start value
/// (START frame) or against a literal zero.
enum class FirstPointMode { startFrame, zero };

struct DigitizerConfig {
    double tol = 0.5;
    double scl = 1.0;     // weight on the length coordinate; 0 = 1-D on increments
    std::size_t kMin = 3; // alphabet floor (k = |P| when fewer pieces exist)
    std::size_t kMax = 100;
    std::uint64_t seed = 0; // drives random re-initialization of k-means
    FirstPointMode firstPointMode = FirstPointMode::startFrame;
};

/// Cluster labels plus their text rendering: label l < 26 maps to
/// 'a'+l, l in [26, 52) to 'A'+(l-26), larger labels to "s<l>".
struct SymbolString {
    std::vector<std::size_t> labels;

    std::string render() const;
    std::size_t size() const { return labels.size(); }

    bool operator==(const SymbolString&) const = default;
};

/// Outcome of one digitization pass.
struct DigitizeResult {
    SymbolString symbols;
    std::vector<Piece> centers;
    std::size_t k = 0;          // clusters used
    bool boundSatisfied = true; // max cluster variance <= tol^2 on exit
};

/// Per-coordinate affine transform used to put pieces and centers into
/// a common standardized space before clustering.
struct PieceStandardization {
    double meanLen = 0.0, stdLen = 1.0;
    double meanInc = 0.0, stdInc = 1.0;
    double scl = 1.0;

    Piece apply(const Piece& p) const;
    Piece invert(const Piece& p) const;
};

/// Mean/std over the piece set; a zero-spread coordinate keeps divisor 1.
PieceStandardization computeStandardization(const std::vector<Piece>& pieces, double scl);

/// Max over non-empty clusters of the mean squared distance of members
/// to their center, in the standardized/scaled space. With scl = 0 only
/// the increment coordinate contributes.
double maxClusterVariance(const std::vector<Piece>& pieces, const std::vector<Piece>& centers,
                          const std::vector<std::size_t>& labels, double scl);

/// Online digitization: clusters all pieces seen so far with k-means
/// warm-started from the previous centers, growing k until the max
/// cluster variance drops under tol^2 or a cap is hit. With fewer than
/// kMin pieces each piece is its own center (bootstrap branch).
DigitizeResult digitize(const std::vector<Piece>& pieces, const std::vector<Piece>& centers,
                        const DigitizerConfig& config, std::mt19937_64& rng);

/// Offline batch digitization: searches k upward from min(kMin, |P|)
/// with deterministically seeded k-means, accepting the smallest k whose
/// max cluster variance is within tol^2.
DigitizeResult digitizeOffline(const std::vector<Piece>& pieces, const DigitizerConfig& config);

/// Receiver-side state: turns arriving endpoints into pieces and keeps
/// the evolving clustering and symbol string.
class Digitizer {
public:
    explicit Digitizer(DigitizerConfig config);

    /// Anchors the stream: the next endpoint forms a piece relative to
    /// (t0, tick0). Matches the transport START frame.
    void start(double t0, std::uint64_t tick0 = 0);

    /// Folds in one endpoint; returns the full current symbol string
    /// (labels of older pieces may change). Throws ProtocolError if the
    /// tick does not advance.
    const SymbolString& receive(double value, std::uint64_t tick);

    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::vector<Piece>& centers() const { return centers_; }
    const SymbolString& symbols() const { return symbols_; }
    double startValue() const { return startValue_; }
    bool started() const { return started_; }
    const DigitizerConfig& config() const { return config_; }

private:
    DigitizerConfig config_;
    std::vector<Piece> pieces_;
    std::vector<Piece> centers_;
    SymbolString symbols_;
    double startValue_ = 0.0;
    double lastValue_ = 0.0;
    std::uint64_t lastTick_ = 0;
    bool started_ = false;
    std::mt19937_64 rng_;
};

} // namespace symed
