#include "paradise/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace paradise {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line_no) {
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t')) --e;
    if (b == e) return std::numeric_limits<double>::quiet_NaN(); // empty cell = gap
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) {
        // from_chars rejects leading '+' and some exotic spellings; fall back.
        try {
            std::size_t pos = 0;
            v = std::stod(std::string(b, e), &pos);
            if (pos != static_cast<std::size_t>(e - b)) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": unparseable number '" + s + "'");
        }
    }
    return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

TimeSeries read_series_csv(const std::filesystem::path& path, const CsvOptions& opts) {
    std::ifstream in = open_input(path);
    TimeSeries series;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<double>> rows;
    std::size_t expected_fields = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto fields = split_csv_line(line);
        if (line_no == 1) {
            expected_fields = fields.size();
            const std::size_t start = opts.skip_first_column ? 1 : 0;
            if (fields.size() <= start)
                throw DataError(path.string() + ": header has no variable columns");
            series.names.assign(fields.begin() + static_cast<long>(start), fields.end());
            continue;
        }
        if (fields.size() != expected_fields)
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(expected_fields) + " fields, got " +
                            std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(series.names.size());
        const std::size_t start = opts.skip_first_column ? 1 : 0;
        for (std::size_t j = start; j < fields.size(); ++j)
            row.push_back(parse_double(fields[j], path, line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(path.string() + ": no data rows");
    series.values = Matrix::from_rows(rows);
    apply_nan_policy(series, opts.nan_policy);
    return series;
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
    std::ofstream out = open_output(path);
    for (std::size_t j = 0; j < series.names.size(); ++j)
        out << (j ? "," : "") << series.names[j];
    out << "\n";
    for (std::size_t i = 0; i < series.n(); ++i) {
        for (std::size_t j = 0; j < series.d(); ++j)
            out << (j ? "," : "") << format_double(series.values(i, j));
        out << "\n";
    }
}

LabelVector read_labels_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    LabelVector out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line == "0") {
            out.labels.push_back(0);
        } else if (line == "1") {
            out.labels.push_back(1);
        } else {
            const double v = parse_double(line, path, line_no);
            if (v != 0.0 && v != 1.0)
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": label must be 0 or 1, got '" + line + "'");
            out.labels.push_back(v != 0.0 ? 1 : 0);
        }
    }
    return out;
}

void write_labels_csv(const std::filesystem::path& path, const LabelVector& labels) {
    std::ofstream out = open_output(path);
    for (int v : labels.labels) out << v << "\n";
}

void write_named_matrix_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& names, const Matrix& m) {
    std::ofstream out = open_output(path);
    out << "name";
    for (const auto& n : names) out << "," << n;
    out << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << names[i];
        for (std::size_t j = 0; j < m.cols(); ++j) out << "," << format_double(m(i, j));
        out << "\n";
    }
}

std::pair<std::vector<std::string>, Matrix> read_named_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    auto header = split_csv_line(line);
    if (header.size() < 2) throw DataError(path.string() + ": malformed matrix header");
    std::vector<std::string> names(header.begin() + 1, header.end());
    Matrix m(names.size(), names.size());
    std::size_t line_no = 1;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        if (row >= names.size()) throw DataError(path.string() + ": too many matrix rows");
        auto fields = split_csv_line(line);
        if (fields.size() != names.size() + 1)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected " + std::to_string(names.size() + 1) + " fields");
        for (std::size_t j = 0; j < names.size(); ++j)
            m(row, j) = parse_double(fields[j + 1], path, line_no);
        ++row;
    }
    if (row != names.size()) throw DataError(path.string() + ": missing matrix rows");
    return {std::move(names), std::move(m)};
}

void write_named_tag_matrix_csv(const std::filesystem::path& path,
                                const std::vector<std::string>& names,
                                const std::vector<std::vector<std::string>>& tags) {
    std::ofstream out = open_output(path);
    out << "name";
    for (const auto& n : names) out << "," << n;
    out << "\n";
    for (std::size_t i = 0; i < tags.size(); ++i) {
        out << names[i];
        for (const auto& t : tags[i]) out << "," << t;
        out << "\n";
    }
}

std::string partition_to_json(const Partition& partition, const std::vector<std::string>& names) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& part : partition.parts) {
        nlohmann::json jp = nlohmann::json::array();
        for (std::size_t j : part) {
            if (j >= names.size()) throw std::invalid_argument("partition index out of range");
            jp.push_back(names[j]);
        }
        parts.push_back(std::move(jp));
    }
    nlohmann::json doc;
    doc["parts"] = std::move(parts);
    return doc.dump(2) + "\n";
}

Partition partition_from_json(const std::string& json_text, const std::vector<std::string>& names) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid partition JSON: ") + e.what());
    }
    if (!doc.contains("parts") || !doc["parts"].is_array())
        throw DataError("partition JSON missing \"parts\" array");
    Partition partition;
    for (const auto& jp : doc["parts"]) {
        std::vector<std::size_t> part;
        for (const auto& jn : jp) {
            const std::string name = jn.get<std::string>();
            auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end())
                throw DataError("partition references unknown variable '" + name + "'");
            part.push_back(static_cast<std::size_t>(it - names.begin()));
        }
        partition.parts.push_back(std::move(part));
    }
    return partition;
}

void write_partition_json(const std::filesystem::path& path, const Partition& partition,
                          const std::vector<std::string>& names) {
    write_text_file(path, partition_to_json(partition, names));
}

Partition read_partition_json(const std::filesystem::path& path,
                              const std::vector<std::string>& names) {
    return partition_from_json(read_text_file(path), names);
}

void write_scores_csv(const std::filesystem::path& path, const ScoreBundle& bundle) {
    std::ofstream out = open_output(path);
    out << "instant,global,origin";
    for (std::size_t k = 0; k < bundle.parts(); ++k) out << ",part_" << (k + 1);
    out << "\n";
    for (std::size_t i = 0; i < bundle.n(); ++i) {
        out << i << "," << format_double(bundle.global[i]) << "," << (bundle.origin[i] + 1);
        for (std::size_t k = 0; k < bundle.parts(); ++k)
            out << "," << format_double(bundle.normalized[k][i]);
        out << "\n";
    }
}

ScoreBundle read_scores_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty scores file");
    const auto header = split_csv_line(line);
    if (header.size() < 3) throw DataError(path.string() + ": malformed scores header");
    const std::size_t p = header.size() - 3;
    ScoreBundle bundle;
    bundle.normalized.resize(p);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": field count mismatch");
        bundle.global.push_back(parse_double(fields[1], path, line_no));
        bundle.origin.push_back(static_cast<int>(parse_double(fields[2], path, line_no)) - 1);
        for (std::size_t k = 0; k < p; ++k)
            bundle.normalized[k].push_back(parse_double(fields[3 + k], path, line_no));
    }
    bundle.local = bundle.normalized; // raw locals are not serialized
    return bundle;
}

std::vector<double> read_score_column(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        out.push_back(parse_double(line, path, line_no));
    }
    if (out.empty()) throw DataError(path.string() + ": no scores");
    return out;
}

void write_score_column(const std::filesystem::path& path, const std::vector<double>& scores) {
    std::ofstream out = open_output(path);
    for (double s : scores) out << format_double(s) << "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

} // namespace paradise
