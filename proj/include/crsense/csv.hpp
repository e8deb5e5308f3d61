#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crsense/errors.hpp"

namespace crsense::cli {

/// One output record. The header set is fixed:
/// sweep_var,sweep_value,strategy,metric,mean,stderr,slots,replications,seed
struct CsvRow {
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string strategy;
    std::string metric;
    double mean = 0.0;
    double se = 0.0;
    int slots = 0;
    int replications = 0;
    std::uint64_t seed = 0;
};

/// Shortest representation that round-trips through from_chars.
std::string format_double(double v);

std::string to_csv(std::span<const CsvRow> rows);
void write_csv(const std::string& path, std::span<const CsvRow> rows);

/// Strict reader for the schema above; throws config_error on any mismatch.
std::vector<CsvRow> read_csv(const std::string& path);
std::vector<CsvRow> read_csv_string(const std::string& text);

}  // namespace crsense::cli
