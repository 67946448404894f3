#pragma once

#include <cstddef>
#include <vector>

namespace symed {

/// Exponentially weighted mean/variance over a stream (damped window),
/// used to standardize raw values online.
///
///   ewma_j = alpha * t_j + (1 - alpha) * ewma_{j-1}
///   ewmv_j = alpha * (t_j - ewma_j)^2 + (1 - alpha) * ewmv_{j-1}
///
/// The first observed value initializes ewma = t_0 and ewmv = 1.0.
class Normalizer {
public:
    /// alpha must lie in (0, 1]. Recommended band for sensor streams
    /// is 0.01..0.02; the default is 0.01.
    explicit Normalizer(double alpha = 0.01);

    /// Folds one value into the statistics. Throws StreamCorruptionError
    /// on non-finite input.
    void update(double t);

    /// (t - ewma) / sqrt(ewmv). Requires at least one update.
    double standardize(double t) const;

    /// Standardizes every element with the current statistics.
    std::vector<double> standardizeSegment(const std::vector<double>& segment) const;

    double ewma() const { return ewma_; }
    double ewmv() const { return ewmv_; }
    double alpha() const { return alpha_; }
    std::size_t count() const { return count_; }

private:
    double alpha_;
    double ewma_ = 0.0;
    double ewmv_ = 0.0;
    std::size_t count_ = 0;
};

} // namespace symed
