// symed CLI: run/sweep experiments, stream over TCP, reconstruct series,
// and generate synthetic data.

#include <CLI11.hpp>

#include "symed/dataset.hpp"
#include "symed/experiment.hpp"
#include "symed/pipeline.hpp"
#include "symed/synthetic.hpp"
#include "symed/transport.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

using namespace symed;

namespace {

struct CommonOptions {
    double alpha = 0.01;
    double scl = 1.0;
    std::size_t kMin = 3;
    std::size_t kMax = 100;
    std::size_t lenMax = 0; // 0 = unbounded
    std::uint64_t seed = 0;
    std::string boundMode = "paper";
    std::string firstPoint = "start";

    RunConfig toRunConfig(double tol) const {
        RunConfig config;
        config.tol = tol;
        config.alpha = alpha;
        config.scl = scl;
        config.kMin = kMin;
        config.kMax = kMax;
        config.lenMax = lenMax == 0 ? std::numeric_limits<std::size_t>::max() : lenMax;
        config.seed = seed;
        config.boundMode = boundMode == "squared" ? BoundMode::squared : BoundMode::paper;
        config.firstPointMode =
            firstPoint == "zero" ? FirstPointMode::zero : FirstPointMode::startFrame;
        return config;
    }
};

void addCommonFlags(CLI::App* app, CommonOptions& opts) {
    app->add_option("--alpha", opts.alpha, "EWMA/EWMV weight, in (0,1]")
        ->capture_default_str();
    app->add_option("--scl", opts.scl, "length-coordinate weight; 0 clusters on increments only")
        ->capture_default_str();
    app->add_option("--kmin", opts.kMin, "minimum alphabet size")->capture_default_str();
    app->add_option("--kmax", opts.kMax, "maximum alphabet size")->capture_default_str();
    app->add_option("--lenmax", opts.lenMax, "maximum segment length (0 = unbounded)")
        ->capture_default_str();
    app->add_option("--seed", opts.seed, "seed for all randomized initialization")
        ->capture_default_str();
    app->add_option("--bound-mode", opts.boundMode, "segment error bound: paper or squared")
        ->check(CLI::IsMember({"paper", "squared"}));
    app->add_option("--first-point", opts.firstPoint,
                    "first piece anchor: start (transmitted t0) or zero")
        ->check(CLI::IsMember({"start", "zero"}));
}

std::vector<NamedDataset> loadInputs(const std::vector<std::string>& paths,
                                     std::size_t minLength) {
    std::vector<NamedDataset> datasets;
    for (const std::string& path : paths) {
        NamedDataset ds;
        ds.name = std::filesystem::path(path).stem().string();
        ds.series = loadDataset({ds.name, path, minLength});
        datasets.push_back(std::move(ds));
    }
    return datasets;
}

std::vector<Piece> readPiecesCsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open " + path);
    }
    std::vector<Piece> pieces;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError("expected 'len,inc' rows in " + path);
        }
        pieces.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return pieces;
}

void writePiecesCsv(const std::string& path, const std::vector<Piece>& pieces) {
    std::ofstream out(path);
    out.precision(17);
    for (const Piece& p : pieces) {
        out << p.len << ',' << p.inc << '\n';
    }
}

void writeValues(std::ostream& out, const std::vector<double>& values) {
    out.precision(17);
    for (double v : values) {
        out << v << '\n';
    }
}

SymbolString parseSymbols(const std::string& text) {
    // Inverse of SymbolString::render for the plain alphabets.
    SymbolString s;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= 'a' && c <= 'z') {
            s.labels.push_back(static_cast<std::size_t>(c - 'a'));
        } else if (c >= 'A' && c <= 'Z') {
            s.labels.push_back(26 + static_cast<std::size_t>(c - 'A'));
        } else {
            throw InvalidInputError("cannot parse symbol character: " + std::string(1, c));
        }
    }
    return s;
}

int cmdRun(const std::vector<std::string>& inputs, std::size_t minLength, double tol,
           const CommonOptions& opts, const std::string& outPath) {
    SweepConfig sweep;
    sweep.tolValues = {tol};
    sweep.base = opts.toRunConfig(tol);
    const ExperimentResult result = runExperiment(loadInputs(inputs, minLength), sweep);
    for (const CellError& e : result.errors) {
        std::cerr << "error: " << e.dataset << "/" << e.seriesId << " tol=" << e.tol << ": "
                  << e.message << '\n';
    }
    emitResults(result.records, outPath);
    std::cout << "wrote " << result.records.size() << " records to " << outPath << '\n';
    return result.errors.empty() ? 0 : 2;
}

int cmdSweep(const std::vector<std::string>& inputs, std::size_t minLength,
             std::vector<double> tols, const CommonOptions& opts, const std::string& outPath) {
    SweepConfig sweep;
    sweep.tolValues = std::move(tols);
    sweep.base = opts.toRunConfig(0.0);
    const ExperimentResult result = runExperiment(loadInputs(inputs, minLength), sweep);
    for (const CellError& e : result.errors) {
        std::cerr << "error: " << e.dataset << "/" << e.seriesId << " tol=" << e.tol << ": "
                  << e.message << '\n';
    }
    emitResults(result.records, outPath);

    std::cout << "wrote " << result.records.size() << " records to " << outPath << '\n';
    for (const auto& [key, row] : aggregate(result.records)) {
        std::cout << key.algo << " tol=" << key.tol << " re_symbols=" << row.reSymbols
                  << " re_pieces=" << row.rePieces << " cr=" << row.cr << " drr=" << row.drr
                  << '\n';
    }
    return result.errors.empty() ? 0 : 2;
}

int cmdSend(const std::string& connect, const std::string& input, std::size_t seriesIndex,
            double tol, const CommonOptions& opts, double periodSeconds) {
    const auto rows = loadAllSeries(input);
    if (seriesIndex >= rows.size()) {
        throw InvalidInputError("series index out of range");
    }
    const auto colon = connect.rfind(':');
    if (colon == std::string::npos) {
        throw InvalidInputError("--connect expects host:port");
    }
    const std::string host = connect.substr(0, colon);
    const auto port = static_cast<std::uint16_t>(std::stoi(connect.substr(colon + 1)));

    auto conn = tcp::Connection::connectTo(host, port);
    FrameSender sender(opts.toRunConfig(tol).compressor(), 0,
                       [&](const Frame& f) { conn.sendFrame(f); });
    for (double t : rows[seriesIndex].values) {
        sender.feed(t);
        if (periodSeconds > 0.0) {
            std::this_thread::sleep_for(std::chrono::duration<double>(periodSeconds));
        }
    }
    sender.finish();
    std::cout << "sent " << rows[seriesIndex].values.size() << " points\n";
    return 0;
}

int cmdServe(std::uint16_t port, double tol, const CommonOptions& opts, bool wallClock,
             double periodSeconds, const std::string& piecesOut,
             const std::string& reconstructionOut) {
    auto conn = tcp::Connection::acceptOn(port);
    Digitizer digitizer(opts.toRunConfig(tol).digitizer());

    // Wall-clock mode ignores transmitted ticks and infers lengths from
    // inter-arrival times.
    std::uint64_t wallTick = 0;
    auto lastArrival = std::chrono::steady_clock::now();

    FrameReceiver receiver({
        [&](double t0, std::uint64_t tick0) {
            digitizer.start(t0, wallClock ? 0 : tick0);
            lastArrival = std::chrono::steady_clock::now();
        },
        [&](double value, std::uint64_t tick) {
            if (wallClock) {
                const auto now = std::chrono::steady_clock::now();
                const double gap = std::chrono::duration<double>(now - lastArrival).count();
                lastArrival = now;
                wallTick += inferTickDelta(gap, periodSeconds);
                tick = wallTick;
            }
            digitizer.receive(value, tick);
            std::cout << "\r" << digitizer.symbols().render() << std::flush;
        },
        [&] { std::cout << '\n'; },
    });

    while (auto frame = conn.receiveFrame()) {
        receiver.accept(*frame);
        if (receiver.ended()) {
            break;
        }
    }
    std::cout << "symbols: " << digitizer.symbols().render() << '\n';
    if (!piecesOut.empty()) {
        writePiecesCsv(piecesOut, digitizer.pieces());
    }
    if (!reconstructionOut.empty()) {
        std::ofstream out(reconstructionOut);
        writeValues(out, reconstructFromPieces(digitizer.pieces(), digitizer.startValue()).values);
    }
    return 0;
}

int cmdReconstruct(const std::string& piecesPath, const std::string& centersPath,
                   const std::string& symbolText, double start, const std::string& outPath) {
    std::vector<double> values;
    if (!piecesPath.empty()) {
        values = reconstructFromPieces(readPiecesCsv(piecesPath), start).values;
    } else {
        if (centersPath.empty() || symbolText.empty()) {
            throw InvalidInputError("need either --pieces or both --centers and --symbols");
        }
        values =
            reconstructFromSymbols(parseSymbols(symbolText), readPiecesCsv(centersPath), start)
                .values;
    }
    if (outPath.empty()) {
        writeValues(std::cout, values);
    } else {
        std::ofstream out(outPath);
        writeValues(out, values);
    }
    return 0;
}

int cmdGen(const std::string& kind, std::size_t n, std::size_t count, std::uint64_t seed,
           const std::string& outPath) {
    std::vector<LabeledSeries> rows;
    for (std::size_t i = 0; i < count; ++i) {
        rows.push_back({std::to_string(i), synthetic::byName(kind, n, seed + i)});
    }
    writeSeriesFile(outPath, rows);
    std::cout << "wrote " << count << " series of length " << n << " to " << outPath << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SymED: online adaptive symbolic representation of streaming time series"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonOptions opts;
    std::vector<std::string> inputs;
    std::string outPath = "results.csv";
    std::size_t minLength = 1000;
    double tol = 0.5;

    auto* run = app.add_subcommand("run", "evaluate one tolerance on dataset files");
    run->add_option("--input", inputs, "UCR-style dataset files")->required();
    run->add_option("--min-length", minLength, "minimum series length for the sampling rule")
        ->capture_default_str();
    run->add_option("--tol", tol, "error tolerance")->capture_default_str();
    run->add_option("--out", outPath, "results CSV path")->capture_default_str();
    addCommonFlags(run, opts);

    std::vector<double> tols;
    auto* sweep = app.add_subcommand("sweep", "evaluate the tolerance grid on dataset files");
    sweep->add_option("--input", inputs, "UCR-style dataset files")->required();
    sweep->add_option("--min-length", minLength, "minimum series length for the sampling rule")
        ->capture_default_str();
    sweep->add_option("--tol", tols, "explicit tolerance values (default 0.1..2.0 step 0.1)");
    sweep->add_option("--out", outPath, "results CSV path")->capture_default_str();
    addCommonFlags(sweep, opts);

    std::string connect;
    std::string input;
    std::size_t seriesIndex = 0;
    double period = 0.0;
    auto* send = app.add_subcommand("send", "stream one series to a receiver over TCP");
    send->add_option("--connect", connect, "receiver address host:port")->required();
    send->add_option("--input", input, "UCR-style dataset file")->required();
    send->add_option("--series", seriesIndex, "row index within the file")
        ->capture_default_str();
    send->add_option("--tol", tol, "error tolerance")->capture_default_str();
    send->add_option("--period", period, "seconds between samples (0 = as fast as possible)")
        ->capture_default_str();
    addCommonFlags(send, opts);

    std::uint16_t port = 9153;
    bool wall = false;
    std::string piecesOut;
    std::string reconstructionOut;
    auto* serve = app.add_subcommand("serve", "receive a stream and digitize it");
    serve->add_option("--listen", port, "TCP port to listen on")->capture_default_str();
    serve->add_option("--tol", tol, "error tolerance")->capture_default_str();
    serve->add_flag("--wall", wall, "infer piece lengths from arrival times");
    serve->add_option("--period", period, "sample period in seconds (wall mode)")
        ->capture_default_str();
    serve->add_option("--pieces-out", piecesOut, "write received pieces as len,inc CSV");
    serve->add_option("--reconstruction-out", reconstructionOut,
                      "write the piece-based reconstruction");
    addCommonFlags(serve, opts);

    std::string piecesPath, centersPath, symbolText;
    double start = 0.0;
    auto* reconstruct =
        app.add_subcommand("reconstruct", "rebuild a series from pieces or symbols+centers");
    reconstruct->add_option("--pieces", piecesPath, "len,inc CSV of pieces");
    reconstruct->add_option("--centers", centersPath, "len,inc CSV of cluster centers");
    reconstruct->add_option("--symbols", symbolText, "symbol string, e.g. abbacab");
    reconstruct->add_option("--start", start, "anchor value t0")->capture_default_str();
    reconstruct->add_option("--out", outPath, "output path (stdout if omitted)");

    std::string kind = "pwl";
    std::size_t n = 1000;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "generate synthetic series");
    gen->add_option("--kind", kind, "ramp, sine, pwl, or walk")->capture_default_str();
    gen->add_option("--n", n, "points per series")->capture_default_str();
    gen->add_option("--count", count, "number of series")->capture_default_str();
    gen->add_option("--seed", seed, "generator seed")->capture_default_str();
    gen->add_option("--out", outPath, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmdRun(inputs, minLength, tol, opts, outPath);
        }
        if (sweep->parsed()) {
            return cmdSweep(inputs, minLength, tols, opts, outPath);
        }
        if (send->parsed()) {
            return cmdSend(connect, input, seriesIndex, tol, opts, period);
        }
        if (serve->parsed()) {
            if (wall && period <= 0.0) {
                throw InvalidInputError("--wall requires a positive --period");
            }
            return cmdServe(port, tol, opts, wall, period, piecesOut, reconstructionOut);
        }
        if (reconstruct->parsed()) {
            return cmdReconstruct(piecesPath, centersPath, symbolText, start,
                                  outPath == "results.csv" ? "" : outPath);
        }
        if (gen->parsed()) {
            return cmdGen(kind, n, count, seed, outPath);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
