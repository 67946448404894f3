#pragma once

#include "symed/dataset.hpp"
#include "symed/metrics.hpp"
#include "symed/pipeline.hpp"

#include <map>
#include <string>
#include <vector>

namespace symed {

struct SweepConfig {
    std::vector<double> tolValues; // empty -> 0.1 .. 2.0 step 0.1
    RunConfig base;                // tol field ignored during the sweep

    std::vector<double> resolvedTols() const;
};

struct NamedDataset {
    std::string name;
    std::vector<LabeledSeries> series;
};

struct CellError {
    std::string dataset;
    std::string seriesId;
    double tol = 0.0;
    std::string message;
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    std::vector<CellError> errors; // failed cells; the sweep keeps going
};

/// Evaluates one series at one tolerance with both algorithms.
std::vector<RunRecord> evaluateSeries(const std::string& dataset, const std::string& seriesId,
                                      const std::vector<double>& series, RunConfig config);

/// Runs every series of every dataset across the tolerance grid.
ExperimentResult runExperiment(const std::vector<NamedDataset>& datasets,
                               const SweepConfig& sweep);

/// Equal-weight aggregation: mean within each dataset first, then mean
/// of dataset means. Keyed by (algo, tol).
struct AggregateKey {
    std::string algo;
    double tol = 0.0;
    auto operator<=>(const AggregateKey&) const = default;
};

struct AggregateRow {
    double reSymbols = 0.0;
    double rePieces = 0.0;
    double cr = 0.0;
    double drr = 0.0;
    double meanSymbols = 0.0;
};

std::map<AggregateKey, AggregateRow> aggregate(const std::vector<RunRecord>& records);

/// Writes the record CSV: deterministic order (dataset, series, algo, tol),
/// latency columns excluded from the determinism contract.
void emitResults(const std::vector<RunRecord>& records, const std::string& path);

} // namespace symed
