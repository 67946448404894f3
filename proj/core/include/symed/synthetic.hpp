#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symed {

/// Bundled generators so experiments and tests run without external data.
namespace synthetic {

std::vector<double> ramp(std::size_t n, double slope = 1.0, double start = 0.0);

std::vector<double> sine(std::size_t n, double period = 50.0, double amplitude = 1.0,
                         double phase = 0.0);

/// Triangle-like piecewise-linear wave: integer breakpoints, slopes
/// alternating +-slope, optional additive uniform noise.
std::vector<double> piecewiseLinear(std::size_t n, std::size_t halfPeriod = 5, double slope = 2.0,
                                    double noise = 0.0, std::uint64_t seed = 0);

/// Piecewise-linear series with random segment lengths and slopes drawn
/// from a seeded generator; breakpoints land on integer ticks.
std::vector<double> randomPiecewiseLinear(std::size_t n, std::uint64_t seed,
                                          std::size_t minSegment = 3, std::size_t maxSegment = 30,
                                          double maxSlope = 3.0);

std::vector<double> randomWalk(std::size_t n, std::uint64_t seed, double stepScale = 1.0);

/// Named lookup used by the CLI `gen` verb: ramp, sine, pwl, walk.
std::vector<double> byName(const std::string& kind, std::size_t n, std::uint64_t seed);

} // namespace synthetic

} // namespace symed
