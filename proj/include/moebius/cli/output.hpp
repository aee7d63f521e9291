// output.hpp - tabular result files in CSV or JSON with the run configuration echoed on top

#pragma once

#include <moebius/cli/config.hpp>

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace moebius::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::string name;  // file stem, e.g. "spectrum_moebius"
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits; nan and inf are written as such.
std::string format_cell(const Cell& cell);

std::string render_csv(const RunConfig& config, const Table& table);
std::string render_json(const RunConfig& config, const Table& table);

/// Writes `<output_dir>/<name>.<csv|json>` and returns the path.
std::filesystem::path write_table(const RunConfig& config, const Table& table);

/// Recovers the configuration from the header block of a CSV file written by `write_table`.
RunConfig read_csv_header(const std::filesystem::path& path);

} // namespace moebius::cli
