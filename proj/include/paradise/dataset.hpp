#pragma once

#include <optional>
#include <string>

#include "paradise/io.hpp"
#include "paradise/types.hpp"

namespace paradise {

enum class DatasetFormat { PlainCsv, Smd, Wadi, Swat };

DatasetFormat dataset_format_from_string(const std::string& s);
std::string dataset_format_name(DatasetFormat f);

/// A loaded dataset: the split to score (test when the format has a
/// train/test pair), optional labels for it, and the optional train split.
struct Dataset {
    TimeSeries series;
    std::optional<LabelVector> labels;
    std::optional<TimeSeries> train;

    double contamination() const { return labels ? labels->contamination() : 0.0; }
};

/// Loads one of the supported layouts.
///   plain-csv  path is a series CSV (header row); labels_path optional.
///   smd        path is a directory with train.txt/csv, test.txt/csv and
///              test_label.txt/csv; comma-separated, no headers.
///   wadi       directory with train.csv and test.csv; headers; Row/Date/
///              Time columns are dropped; test has a trailing "label"
///              column with 0/1 values.
///   swat       like wadi, but the trailing column may also be named
///              "Normal/Attack" with Normal/Attack values.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const CsvOptions& opts = {},
                     const std::optional<std::filesystem::path>& labels_path = {});

} // namespace paradise
