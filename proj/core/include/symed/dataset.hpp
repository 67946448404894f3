#pragma once

#include <string>
#include <vector>

namespace symed {

struct DatasetSpec {
    std::string name;
    std::string path;
    std::size_t minLength = 1000;
};

struct LabeledSeries {
    std::string classLabel;
    std::vector<double> values;
};

/// Loads a UCR-style delimited file (class label first, then values,
/// tab or comma separated) and applies the sampling rule: the first
/// series of each class, keeping only series of at least minLength
/// points. Throws ParseError (naming the line) on malformed rows and
/// InvalidInputError when nothing survives the filter.
std::vector<LabeledSeries> loadDataset(const DatasetSpec& spec);

/// Same parsing, no sampling: every row of the file.
std::vector<LabeledSeries> loadAllSeries(const std::string& path);

void writeSeriesFile(const std::string& path, const std::vector<LabeledSeries>& series,
                     char delimiter = ',');

} // namespace symed
