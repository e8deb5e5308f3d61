#include "crsense/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace crsense::cli {

namespace {
constexpr const char* kHeader = "sweep_var,sweep_value,strategy,metric,mean,stderr,slots,replications,seed";
}

std::string format_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, p);
}

std::string to_csv(std::span<const CsvRow> rows) {
    std::string out{kHeader};
    out += '\n';
    for (const CsvRow& r : rows) {
        out += r.sweep_var;
        out += ',';
        out += format_double(r.sweep_value);
        out += ',';
        out += r.strategy;
        out += ',';
        out += r.metric;
        out += ',';
        out += format_double(r.mean);
        out += ',';
        out += format_double(r.se);
        out += ',';
        out += std::to_string(r.slots);
        out += ',';
        out += std::to_string(r.replications);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, std::span<const CsvRow> rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    out << to_csv(rows);
    if (!out) throw std::runtime_error("failed writing: " + path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) comma = line.size();
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_double_field(const std::string& s, int line_no) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw config_error("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

template <typename Int>
Int parse_int_field(const std::string& s, int line_no) {
    Int v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw config_error("csv line " + std::to_string(line_no) + ": bad integer '" + s + "'");
    return v;
}

}  // namespace

std::vector<CsvRow> read_csv_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw config_error("csv: missing or unexpected header");
    std::vector<CsvRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 9)
            throw config_error("csv line " + std::to_string(line_no) + ": expected 9 fields, got " +
                               std::to_string(f.size()));
        CsvRow r;
        r.sweep_var = f[0];
        r.sweep_value = parse_double_field(f[1], line_no);
        r.strategy = f[2];
        r.metric = f[3];
        r.mean = parse_double_field(f[4], line_no);
        r.se = parse_double_field(f[5], line_no);
        r.slots = parse_int_field<int>(f[6], line_no);
        r.replications = parse_int_field<int>(f[7], line_no);
        r.seed = parse_int_field<std::uint64_t>(f[8], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<CsvRow> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open csv file: " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return read_csv_string(oss.str());
}

}  // namespace crsense::cli
