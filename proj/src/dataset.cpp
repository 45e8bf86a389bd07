#include "paradise/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace paradise {

namespace {

std::filesystem::path find_file(const std::filesystem::path& dir, const std::string& stem) {
    for (const char* ext : {".txt", ".csv"}) {
        const auto candidate = dir / (stem + ext);
        if (std::filesystem::exists(candidate)) return candidate;
    }
    throw DataError("missing " + (dir / stem).string() + ".{txt,csv}");
}

/// Comma-separated numeric rows, no header.
TimeSeries read_headerless_matrix(const std::filesystem::path& path, const std::string& prefix) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string field = line.substr(start, comma - start);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size())
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": unparseable number '" + field + "'");
            row.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(rows.front().size()) + " fields, got " +
                            std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(path.string() + ": no data rows");
    TimeSeries series;
    series.values = Matrix::from_rows(rows);
    for (std::size_t j = 0; j < series.d(); ++j)
        series.names.push_back(prefix + std::to_string(j + 1));
    return series;
}

bool is_time_column(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower == "row" || lower == "date" || lower == "time" || lower == "timestamp";
}

/// Industrial-plant CSV export: drop time columns, split off an optional
/// trailing label column.
std::pair<TimeSeries, std::optional<LabelVector>> load_plant_split(
    const std::filesystem::path& path, const CsvOptions& opts, bool allow_text_labels) {
    CsvOptions raw = opts;
    raw.skip_first_column = false;

    std::ifstream probe(path);
    if (!probe) throw DataError("cannot open " + path.string());
    std::string header_line;
    std::getline(probe, header_line);
    probe.close();

    std::vector<std::string> header;
    {
        std::string field;
        for (char c : header_line) {
            if (c == ',') {
                header.push_back(field);
                field.clear();
            } else if (c != '\r') {
                field += c;
            }
        }
        header.push_back(field);
    }
    const bool has_label =
        !header.empty() && (header.back() == "label" || header.back() == "Normal/Attack");
    const bool text_labels = has_label && header.back() == "Normal/Attack";
    if (text_labels && !allow_text_labels)
        throw DataError(path.string() + ": unexpected Normal/Attack column for this format");

    TimeSeries full;
    std::optional<LabelVector> labels;
    if (text_labels) {
        // Normal/Attack values are not numeric; parse by hand.
        std::ifstream in(path);
        std::string line;
        std::getline(in, line); // header consumed above
        std::vector<std::vector<double>> rows;
        LabelVector lv;
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> fields;
            std::string field;
            for (char c : line) {
                if (c == ',') {
                    fields.push_back(field);
                    field.clear();
                } else {
                    field += c;
                }
            }
            fields.push_back(field);
            if (fields.size() != header.size())
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": field count mismatch");
            std::vector<double> row;
            for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
                double v = 0.0;
                auto [ptr, ec] =
                    std::from_chars(fields[j].data(), fields[j].data() + fields[j].size(), v);
                if (ec != std::errc() || ptr != fields[j].data() + fields[j].size())
                    throw DataError(path.string() + ":" + std::to_string(line_no) +
                                    ": unparseable number '" + fields[j] + "'");
                row.push_back(v);
            }
            const std::string& lab = fields.back();
            if (lab == "Normal" || lab == "normal") lv.labels.push_back(0);
            else if (lab == "Attack" || lab == "attack" || lab == "A ttack") lv.labels.push_back(1);
            else
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": unknown label '" + lab + "'");
            rows.push_back(std::move(row));
        }
        full.values = Matrix::from_rows(rows);
        full.names.assign(header.begin(), header.end() - 1);
        labels = std::move(lv);
    } else {
        full = read_series_csv(path, raw);
        if (has_label) {
            const std::size_t label_col = full.d() - 1;
            LabelVector lv;
            for (std::size_t i = 0; i < full.n(); ++i) {
                const double v = full.values(i, label_col);
                if (v != 0.0 && v != 1.0)
                    throw DataError(path.string() + ": label column must be 0/1");
                lv.labels.push_back(v != 0.0 ? 1 : 0);
            }
            labels = std::move(lv);
            std::vector<std::size_t> keep;
            for (std::size_t j = 0; j < label_col; ++j) keep.push_back(j);
            full.values = full.values.select_columns(keep);
            full.names.pop_back();
        }
    }

    // Drop time columns.
    std::vector<std::size_t> keep;
    std::vector<std::string> kept_names;
    for (std::size_t j = 0; j < full.d(); ++j) {
        if (!is_time_column(full.names[j])) {
            keep.push_back(j);
            kept_names.push_back(full.names[j]);
        }
    }
    if (keep.size() != full.d()) {
        full.values = full.values.select_columns(keep);
        full.names = std::move(kept_names);
    }
    return {std::move(full), std::move(labels)};
}

} // namespace

DatasetFormat dataset_format_from_string(const std::string& s) {
    if (s == "plain-csv" || s == "csv") return DatasetFormat::PlainCsv;
    if (s == "smd") return DatasetFormat::Smd;
    if (s == "wadi") return DatasetFormat::Wadi;
    if (s == "swat") return DatasetFormat::Swat;
    throw std::invalid_argument("unknown dataset format '" + s + "'");
}

std::string dataset_format_name(DatasetFormat f) {
    switch (f) {
    case DatasetFormat::PlainCsv: return "plain-csv";
    case DatasetFormat::Smd: return "smd";
    case DatasetFormat::Wadi: return "wadi";
    case DatasetFormat::Swat: return "swat";
    }
    return "?";
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const CsvOptions& opts, const std::optional<std::filesystem::path>& labels_path) {
    Dataset ds;
    switch (format) {
    case DatasetFormat::PlainCsv: {
        ds.series = read_series_csv(path, opts);
        if (labels_path) ds.labels = read_labels_csv(*labels_path);
        break;
    }
    case DatasetFormat::Smd: {
        ds.train = read_headerless_matrix(find_file(path, "train"), "var_");
        ds.series = read_headerless_matrix(find_file(path, "test"), "var_");
        ds.labels = read_labels_csv(find_file(path, "test_label"));
        break;
    }
    case DatasetFormat::Wadi:
    case DatasetFormat::Swat: {
        const bool text_ok = format == DatasetFormat::Swat;
        auto [train, train_labels] = load_plant_split(path / "train.csv", opts, text_ok);
        auto [test, test_labels] = load_plant_split(path / "test.csv", opts, text_ok);
        (void)train_labels; // train label columns, when present, are ignored
        ds.train = std::move(train);
        ds.series = std::move(test);
        if (!test_labels) throw DataError((path / "test.csv").string() + ": no label column found");
        ds.labels = std::move(test_labels);
        break;
    }
    }
    if (ds.labels && ds.labels->size() != ds.series.n())
        throw DataError("labels length " + std::to_string(ds.labels->size()) +
                        " does not match series length " + std::to_string(ds.series.n()));
    if (ds.train && ds.train->d() != ds.series.d())
        throw DataError("train has " + std::to_string(ds.train->d()) + " variables but test has " +
                        std::to_string(ds.series.d()));
    return ds;
}

} // namespace paradise
