#include "tiescan/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tiescan/errors.hpp"

namespace tiescan {

InputFormat parse_input_format(const std::string& s) {
    if (s == "csv-vectors" || s == "csv") return InputFormat::csv_vectors;
    if (s == "adjacency-stack") return InputFormat::adjacency_stack;
    if (s == "adjacency-dir") return InputFormat::adjacency_dir;
    throw ConfigError("unknown input format: " + s);
}

std::string to_string(InputFormat f) {
    switch (f) {
    case InputFormat::csv_vectors: return "csv-vectors";
    case InputFormat::adjacency_stack: return "adjacency-stack";
    case InputFormat::adjacency_dir: return "adjacency-dir";
    }
    return "?";
}

namespace {

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<double> parse_numeric_row(const std::string& line, const char* what) {
    std::vector<double> row;
    std::string token;
    // Accept comma or whitespace separated values.
    std::string normalized = line;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream fields(normalized);
    while (fields >> token) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw InputError(std::string("non-numeric value in ") + what + ": " + token);
        row.push_back(value);
    }
    return row;
}

ObservationSequence read_csv_vectors(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input: " + path.string());
    ObservationSequence out;
    std::string line;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        auto row = parse_numeric_row(line, "csv row");
        if (row.empty()) continue;
        if (width == 0) width = row.size();
        if (row.size() != width) throw InputError("ragged csv row");
        out.push_back(Observation::vector(std::move(row)));
    }
    return out;
}

Observation block_to_adjacency(const std::vector<std::vector<double>>& rows,
                               const std::string& where) {
    const std::size_t v = rows.size();
    std::vector<double> adj;
    adj.reserve(v * v);
    for (const auto& row : rows) {
        if (row.size() != v) throw InputError("non-square adjacency block in " + where);
        for (double x : row) {
            if (x != 0.0 && x != 1.0) throw InputError("adjacency entries must be 0/1 in " + where);
            adj.push_back(x);
        }
    }
    return Observation::matrix(std::move(adj), static_cast<int>(v), static_cast<int>(v));
}

ObservationSequence read_adjacency_stack(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input: " + path.string());
    ObservationSequence out;
    std::vector<std::vector<double>> block;
    std::string line;
    auto flush = [&] {
        if (!block.empty()) {
            out.push_back(block_to_adjacency(block, path.string()));
            block.clear();
        }
    };
    while (std::getline(in, line)) {
        if (blank(line)) {
            flush();
            continue;
        }
        block.push_back(parse_numeric_row(line, "adjacency row"));
    }
    flush();
    return out;
}

ObservationSequence read_adjacency_dir(const std::filesystem::path& path) {
    if (!std::filesystem::is_directory(path))
        throw InputError("not a directory: " + path.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    ObservationSequence out;
    for (const auto& file : files) {
        auto part = read_adjacency_stack(file);
        if (part.size() != 1)
            throw InputError("expected exactly one adjacency matrix in " + file.string());
        out.push_back(std::move(part.front()));
    }
    return out;
}

} // namespace

ObservationSequence ingest(const std::filesystem::path& path, InputFormat format) {
    ObservationSequence out;
    switch (format) {
    case InputFormat::csv_vectors: out = read_csv_vectors(path); break;
    case InputFormat::adjacency_stack: out = read_adjacency_stack(path); break;
    case InputFormat::adjacency_dir: out = read_adjacency_dir(path); break;
    }
    if (out.size() < 4) throw InputError("need at least 4 observations");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].rows != out[0].rows || out[i].cols != out[0].cols)
            throw InputError("observation shape mismatch in input");
    return out;
}

} // namespace tiescan
