#include "symed/pipeline.hpp"
#include "symed/errors.hpp"
#include "symed/transport.hpp"

#include <cmath>
#include <thread>

namespace symed {

namespace {

SymedRunResult collectFromDigitizer(Digitizer&& digitizer, const LatencyProbe& sender,
                                    const LatencyProbe& receiver) {
    SymedRunResult result;
    result.pieces = digitizer.pieces();
    result.centers = digitizer.centers();
    result.symbols = digitizer.symbols();
    result.startValue = digitizer.startValue();
    result.latSenderMs = sender.perSymbolMs();
    result.latReceiverMs = receiver.perSymbolMs();
    return result;
}

} // namespace

SymedRunResult runSymedMonolithic(const std::vector<double>& series, const RunConfig& config) {
    if (series.size() < 2) {
        throw InvalidInputError("series must have at least 2 points");
    }
    Digitizer digitizer(config.digitizer());
    LatencyProbe senderProbe, receiverProbe;

    FrameReceiver receiver({
        [&](double t0, std::uint64_t tick0) { digitizer.start(t0, tick0); },
        [&](double value, std::uint64_t tick) {
            LatencyProbe::Scope scope(receiverProbe);
            digitizer.receive(value, tick);
            receiverProbe.addSymbols(1);
        },
        nullptr,
    });
    FrameSender sender(config.compressor(), 0, [&](const Frame& f) { receiver.accept(f); });

    for (double t : series) {
        LatencyProbe::Scope scope(senderProbe);
        sender.feed(t);
    }
    sender.finish();
    senderProbe.addSymbols(digitizer.symbols().size());
    return collectFromDigitizer(std::move(digitizer), senderProbe, receiverProbe);
}

SymedRunResult runSymedThreaded(const std::vector<double>& series, const RunConfig& config) {
    if (series.size() < 2) {
        throw InvalidInputError("series must have at least 2 points");
    }
    InprocChannel channel;
    Digitizer digitizer(config.digitizer());
    LatencyProbe senderProbe, receiverProbe;
    std::exception_ptr receiverFailure;

    std::thread receiverThread([&] {
        try {
            FrameReceiver receiver({
                [&](double t0, std::uint64_t tick0) { digitizer.start(t0, tick0); },
                [&](double value, std::uint64_t tick) {
                    LatencyProbe::Scope scope(receiverProbe);
                    digitizer.receive(value, tick);
                    receiverProbe.addSymbols(1);
                },
                nullptr,
            });
            while (auto frame = channel.pop()) {
                receiver.accept(*frame);
                if (receiver.ended()) {
                    break;
                }
            }
        } catch (...) {
            receiverFailure = std::current_exception();
        }
    });

    FrameSender sender(config.compressor(), 0, [&](const Frame& f) { channel.push(f); });
    for (double t : series) {
        LatencyProbe::Scope scope(senderProbe);
        sender.feed(t);
    }
    sender.finish();
    channel.close();
    receiverThread.join();
    if (receiverFailure) {
        std::rethrow_exception(receiverFailure);
    }
    senderProbe.addSymbols(digitizer.symbols().size());
    return collectFromDigitizer(std::move(digitizer), senderProbe, receiverProbe);
}

AbbaRunResult runAbbaOffline(const std::vector<double>& series, const RunConfig& config) {
    if (series.size() < 2) {
        throw InvalidInputError("series must have at least 2 points");
    }
    LatencyProbe probe;
    AbbaRunResult result;
    {
        LatencyProbe::Scope scope(probe);
        double mean = 0.0;
        for (double v : series) {
            mean += v;
        }
        mean /= static_cast<double>(series.size());
        double var = 0.0;
        for (double v : series) {
            var += (v - mean) * (v - mean);
        }
        var /= static_cast<double>(series.size());
        result.mean = mean;
        result.std = var > 0.0 ? std::sqrt(var) : 1.0;

        std::vector<double> normalized(series.size());
        for (std::size_t i = 0; i < series.size(); ++i) {
            normalized[i] = (series[i] - mean) / result.std;
        }
        result.normalizedStart = normalized.front();

        result.pieces = compressOffline(normalized, config.tol, config.lenMax, config.boundMode);
        DigitizeResult digitized = digitizeOffline(result.pieces, config.digitizer());
        result.symbols = std::move(digitized.symbols);
        result.centers = std::move(digitized.centers);
    }
    result.totalMs = probe.totalMs();
    return result;
}

std::vector<double> symedReconstructFromPieces(const SymedRunResult& run) {
    return reconstructFromPieces(run.pieces, run.startValue).values;
}

std::vector<double> symedReconstructFromSymbols(const SymedRunResult& run) {
    return reconstructFromSymbols(run.symbols, run.centers, run.startValue).values;
}

namespace {

std::vector<double> denormalize(std::vector<double> values, double mean, double std) {
    for (double& v : values) {
        v = v * std + mean;
    }
    return values;
}

} // namespace

std::vector<double> abbaReconstructFromSymbols(const AbbaRunResult& run) {
    return denormalize(
        reconstructFromSymbols(run.symbols, run.centers, run.normalizedStart).values, run.mean,
        run.std);
}

std::vector<double> abbaReconstructFromPieces(const AbbaRunResult& run) {
    return denormalize(reconstructFromPieces(run.pieces, run.normalizedStart).values, run.mean,
                       run.std);
}

} // namespace symed
