#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "paradise/types.hpp"

namespace paradise {

struct CsvOptions {
    bool skip_first_column = false; // drop a leading timestamp/index column
    NanPolicy nan_policy = NanPolicy::Reject;
};

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Series CSV: first row is the header with variable names, one row per
/// instant. Parse failures report 1-based line numbers.
TimeSeries read_series_csv(const std::filesystem::path& path, const CsvOptions& opts = {});
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

/// Labels: one 0/1 value per line, no header.
LabelVector read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(const std::filesystem::path& path, const LabelVector& labels);

/// Square named-matrix CSV: header "name,<names...>", then one row per
/// variable: name followed by d values (or d strings for the tag variant).
void write_named_matrix_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& names, const Matrix& m);
std::pair<std::vector<std::string>, Matrix> read_named_matrix_csv(const std::filesystem::path& path);
void write_named_tag_matrix_csv(const std::filesystem::path& path,
                                const std::vector<std::string>& names,
                                const std::vector<std::vector<std::string>>& tags);

/// Partition JSON: {"parts": [["name1","name2"], ...]}. Names survive column
/// reordering across runs; indices would not.
std::string partition_to_json(const Partition& partition, const std::vector<std::string>& names);
Partition partition_from_json(const std::string& json_text, const std::vector<std::string>& names);
void write_partition_json(const std::filesystem::path& path, const Partition& partition,
                          const std::vector<std::string>& names);
Partition read_partition_json(const std::filesystem::path& path,
                              const std::vector<std::string>& names);

/// Scores CSV: instant, global, origin (1-based part number), then one
/// normalized column per part.
void write_scores_csv(const std::filesystem::path& path, const ScoreBundle& bundle);
ScoreBundle read_scores_csv(const std::filesystem::path& path);

/// Single score column, one value per line, no header. Used for external
/// detector score injection.
std::vector<double> read_score_column(const std::filesystem::path& path);
void write_score_column(const std::filesystem::path& path, const std::vector<double>& scores);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace paradise
