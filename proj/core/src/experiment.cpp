#include "symed/experiment.hpp"
#include "symed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

namespace symed {

std::vector<double> SweepConfig::resolvedTols() const {
    if (!tolValues.empty()) {
        return tolValues;
    }
    std::vector<double> tols;
    for (int i = 1; i <= 20; ++i) {
        tols.push_back(static_cast<double>(i) / 10.0);
    }
    return tols;
}

std::vector<RunRecord> evaluateSeries(const std::string& dataset, const std::string& seriesId,
                                      const std::vector<double>& series, RunConfig config) {
    std::vector<RunRecord> out;

    const SymedRunResult symed = runSymedMonolithic(series, config);
    RunRecord rs;
    rs.dataset = dataset;
    rs.seriesId = seriesId;
    rs.algo = "symed";
    rs.tol = config.tol;
    rs.alpha = config.alpha;
    rs.scl = config.scl;
    rs.nSymbols = symed.symbols.size();
    rs.reSymbols = dtw(series, symedReconstructFromSymbols(symed));
    rs.rePieces = dtw(series, symedReconstructFromPieces(symed));
    rs.cr = compressionRate(CompressionKind::symed, series.size(), symed.symbols.size(),
                            symed.centers.size(), symed.pieces.size());
    rs.drr = dimensionReductionRate(symed.symbols.size(), series.size());
    rs.latSenderMs = symed.latSenderMs;
    rs.latReceiverMs = symed.latReceiverMs;
    out.push_back(std::move(rs));

    const AbbaRunResult abba = runAbbaOffline(series, config);
    RunRecord ra;
    ra.dataset = dataset;
    ra.seriesId = seriesId;
    ra.algo = "abba";
    ra.tol = config.tol;
    ra.alpha = config.alpha;
    ra.scl = config.scl;
    ra.nSymbols = abba.symbols.size();
    ra.reSymbols = dtw(series, abbaReconstructFromSymbols(abba));
    ra.rePieces = std::numeric_limits<double>::quiet_NaN();
    ra.cr = compressionRate(CompressionKind::abba, series.size(), abba.symbols.size(),
                            abba.centers.size(), abba.pieces.size());
    ra.drr = dimensionReductionRate(abba.symbols.size(), series.size());
    ra.totalMs = abba.totalMs;
    out.push_back(std::move(ra));

    return out;
}

ExperimentResult runExperiment(const std::vector<NamedDataset>& datasets,
                               const SweepConfig& sweep) {
    ExperimentResult result;
    const std::vector<double> tols = sweep.resolvedTols();
    for (const NamedDataset& ds : datasets) {
        for (std::size_t si = 0; si < ds.series.size(); ++si) {
            const std::string seriesId = std::to_string(si);
            for (double tol : tols) {
                RunConfig config = sweep.base;
                config.tol = tol;
                try {
                    std::vector<RunRecord> cell =
                        evaluateSeries(ds.name, seriesId, ds.series[si].values, config);
                    for (RunRecord& r : cell) {
                        result.records.push_back(std::move(r));
                    }
                } catch (const std::exception& e) {
                    result.errors.push_back({ds.name, seriesId, tol, e.what()});
                }
            }
        }
    }
    return result;
}

std::map<AggregateKey, AggregateRow> aggregate(const std::vector<RunRecord>& records) {
    // dataset -> key -> running sums
    struct Sums {
        AggregateRow row;
        std::size_t n = 0;
    };
    std::map<std::string, std::map<AggregateKey, Sums>> perDataset;
    for (const RunRecord& r : records) {
        Sums& s = perDataset[r.dataset][{r.algo, r.tol}];
        s.row.reSymbols += r.reSymbols;
        s.row.rePieces += std::isnan(r.rePieces) ? 0.0 : r.rePieces;
        s.row.cr += r.cr;
        s.row.drr += r.drr;
        s.row.meanSymbols += static_cast<double>(r.nSymbols);
        ++s.n;
    }
    // Equal dataset weights: average within a dataset, then across datasets.
    std::map<AggregateKey, Sums> crossDataset;
    for (const auto& [dataset, keyed] : perDataset) {
        for (const auto& [key, sums] : keyed) {
            const double n = static_cast<double>(sums.n);
            Sums& agg = crossDataset[key];
            agg.row.reSymbols += sums.row.reSymbols / n;
            agg.row.rePieces += sums.row.rePieces / n;
            agg.row.cr += sums.row.cr / n;
            agg.row.drr += sums.row.drr / n;
            agg.row.meanSymbols += sums.row.meanSymbols / n;
            ++agg.n;
        }
    }
    std::map<AggregateKey, AggregateRow> out;
    for (const auto& [key, sums] : crossDataset) {
        const double n = static_cast<double>(sums.n);
        out[key] = {sums.row.reSymbols / n, sums.row.rePieces / n, sums.row.cr / n,
                    sums.row.drr / n, sums.row.meanSymbols / n};
    }
    return out;
}

namespace {

std::string formatOptional(const std::optional<double>& v) {
    if (!v) {
        return "";
    }
    std::ostringstream ss;
    ss << *v;
    return ss.str();
}

} // namespace

void emitResults(const std::vector<RunRecord>& records, const std::string& path) {
    std::vector<const RunRecord*> sorted;
    sorted.reserve(records.size());
    for (const RunRecord& r : records) {
        sorted.push_back(&r);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const RunRecord* a, const RunRecord* b) {
        return std::tie(a->dataset, a->seriesId, a->algo, a->tol) <
               std::tie(b->dataset, b->seriesId, b->algo, b->tol);
    });

    std::ofstream out(path);
    if (!out) {
        throw InvalidInputError("cannot write results file: " + path);
    }
    out << "dataset,series_id,algo,tol,alpha,scl,n_symbols,re_symbols,re_pieces,cr,drr,"
           "lat_sender_ms,lat_receiver_ms,total_ms\n";
    out.precision(17);
    for (const RunRecord* r : sorted) {
        out << r->dataset << ',' << r->seriesId << ',' << r->algo << ',' << r->tol << ','
            << r->alpha << ',' << r->scl << ',' << r->nSymbols << ',' << r->reSymbols << ',';
        if (std::isnan(r->rePieces)) {
            out << "";
        } else {
            out << r->rePieces;
        }
        out << ',' << r->cr << ',' << r->drr << ',' << formatOptional(r->latSenderMs) << ','
            << formatOptional(r->latReceiverMs) << ',' << formatOptional(r->totalMs) << '\n';
    }
}

} // namespace symed
