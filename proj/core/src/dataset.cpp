#include "symed/dataset.hpp"
#include "symed/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace symed {

namespace {

char detectDelimiter(const std::string& line) {
    if (line.find('\t') != std::string::npos) {
        return '\t';
    }
    return ',';
}

LabeledSeries parseRow(const std::string& line, char delimiter, std::size_t lineNumber) {
    LabeledSeries row;
    std::stringstream ss(line);
    std::string cell;
    bool first = true;
    while (std::getline(ss, cell, delimiter)) {
        if (first) {
            row.classLabel = cell;
            first = false;
            continue;
        }
        if (cell.empty()) {
            continue;
        }
        std::size_t consumed = 0;
        double value;
        try {
            value = std::stod(cell, &consumed);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineNumber) + ": non-numeric cell '" +
                             cell + "'");
        }
        if (consumed != cell.size() || !std::isfinite(value)) {
            throw ParseError("line " + std::to_string(lineNumber) + ": invalid cell '" + cell +
                             "'");
        }
        row.values.push_back(value);
    }
    if (first) {
        throw ParseError("line " + std::to_string(lineNumber) + ": empty row");
    }
    return row;
}

} // namespace

std::vector<LabeledSeries> loadAllSeries(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open dataset file: " + path);
    }
    std::vector<LabeledSeries> rows;
    std::string line;
    std::size_t lineNumber = 0;
    char delimiter = ',';
    bool delimiterKnown = false;
    while (std::getline(in, line)) {
        ++lineNumber;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (!delimiterKnown) {
            delimiter = detectDelimiter(line);
            delimiterKnown = true;
        }
        rows.push_back(parseRow(line, delimiter, lineNumber));
    }
    return rows;
}

std::vector<LabeledSeries> loadDataset(const DatasetSpec& spec) {
    const std::vector<LabeledSeries> rows = loadAllSeries(spec.path);
    std::vector<LabeledSeries> selected;
    std::unordered_set<std::string> seenClasses;
    for (const LabeledSeries& row : rows) {
        if (!seenClasses.insert(row.classLabel).second) {
            continue;
        }
        selected.push_back(row);
    }
    std::erase_if(selected,
                  [&](const LabeledSeries& s) { return s.values.size() < spec.minLength; });
    if (selected.empty()) {
        throw InvalidInputError("no series of length >= " + std::to_string(spec.minLength) +
                                " in " + spec.path);
    }
    return selected;
}

void writeSeriesFile(const std::string& path, const std::vector<LabeledSeries>& series,
                     char delimiter) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInputError("cannot write file: " + path);
    }
    out.precision(17);
    for (const LabeledSeries& s : series) {
        out << s.classLabel;
        for (double v : s.values) {
            out << delimiter << v;
        }
        out << '\n';
    }
}

} // namespace symed
