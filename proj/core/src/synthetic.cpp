#include "symed/synthetic.hpp"
#include "symed/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace symed::synthetic {

std::vector<double> ramp(std::size_t n, double slope, double start) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = start + slope * static_cast<double>(i);
    }
    return out;
}

std::vector<double> sine(std::size_t n, double period, double amplitude, double phase) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = amplitude *
                 std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / period + phase);
    }
    return out;
}

std::vector<double> piecewiseLinear(std::size_t n, std::size_t halfPeriod, double slope,
                                    double noise, std::uint64_t seed) {
    if (halfPeriod == 0) {
        throw InvalidInputError("halfPeriod must be positive");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-noise, noise);
    std::vector<double> out(n);
    double value = 0.0;
    double direction = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = noise > 0.0 ? value + jitter(rng) : value;
        value += direction * slope;
        if ((i + 1) % halfPeriod == 0) {
            direction = -direction;
        }
    }
    return out;
}

std::vector<double> randomPiecewiseLinear(std::size_t n, std::uint64_t seed,
                                          std::size_t minSegment, std::size_t maxSegment,
                                          double maxSlope) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> lenDist(minSegment, maxSegment);
    std::uniform_real_distribution<double> slopeDist(-maxSlope, maxSlope);
    std::vector<double> out;
    out.reserve(n);
    double value = 0.0;
    out.push_back(value);
    while (out.size() < n) {
        const std::size_t len = lenDist(rng);
        const double slope = slopeDist(rng);
        for (std::size_t h = 0; h < len && out.size() < n; ++h) {
            value += slope;
            out.push_back(value);
        }
    }
    return out;
}

std::vector<double> randomWalk(std::size_t n, std::uint64_t seed, double stepScale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, stepScale);
    std::vector<double> out(n);
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        value += step(rng);
        out[i] = value;
    }
    return out;
}

std::vector<double> byName(const std::string& kind, std::size_t n, std::uint64_t seed) {
    if (kind == "ramp") {
        return ramp(n);
    }
    if (kind == "sine") {
        return sine(n);
    }
    if (kind == "pwl") {
        return randomPiecewiseLinear(n, seed);
    }
    if (kind == "walk") {
        return randomWalk(n, seed);
    }
    throw InvalidInputError("unknown synthetic kind: " + kind +
                            " (expected ramp, sine, pwl, or walk)");
}

} // namespace symed::synthetic
