#include "symed/normalizer.hpp"
#include "symed/errors.hpp"

#include <cmath>

namespace symed {

namespace {
// Floating underflow guard; ewmv cannot reach 0 in exact arithmetic
// but a constant stream decays it geometrically.
constexpr double kEwmvFloor = 1e-300;
} // namespace

Normalizer::Normalizer(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || alpha > 1.0 || !std::isfinite(alpha)) {
        throw InvalidInputError("normalizer alpha must be in (0, 1]");
    }
}

void Normalizer::update(double t) {
    if (!std::isfinite(t)) {
        throw StreamCorruptionError("non-finite value fed to normalizer");
    }
    if (count_ == 0) {
        ewma_ = t;
        ewmv_ = 1.0;
    } else {
        ewma_ = alpha_ * t + (1.0 - alpha_) * ewma_;
        const double dev = t - ewma_;
        ewmv_ = alpha_ * dev * dev + (1.0 - alpha_) * ewmv_;
        if (ewmv_ < kEwmvFloor) {
            ewmv_ = kEwmvFloor;
        }
    }
    ++count_;
}

double Normalizer::standardize(double t) const {
    if (count_ == 0) {
        throw InvalidInputError("standardize before first update");
    }
    return (t - ewma_) / std::sqrt(ewmv_);
}

std::vector<double> Normalizer::standardizeSegment(const std::vector<double>& segment) const {
    std::vector<double> out;
    out.reserve(segment.size());
    for (double v : segment) {
        out.push_back(standardize(v));
    }
    return out;
}

} // namespace symed
