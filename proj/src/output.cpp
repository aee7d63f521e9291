#include <moebius/cli/output.hpp>

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace moebius::cli {

std::string format_cell(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    const double v = std::get<double>(cell);
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string render_csv(const RunConfig& config, const Table& table) {
    std::string out = "# moebius " + to_string(config.experiment) + "\n";
    for (const auto& line : format_config(config)) out += "# " + line + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += format_cell(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::string render_json(const RunConfig& config, const Table& table) {
    nlohmann::ordered_json doc;
    auto& cfg = doc["config"] = nlohmann::ordered_json::object();
    for (const auto& line : format_config(config)) {
        const auto eq = line.find(" = ");
        cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    doc["columns"] = table.columns;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto& r = rows.emplace_back(nlohmann::ordered_json::array());
        for (const auto& cell : row) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v)) r.push_back(v);
                        else r.push_back(nullptr);
                    } else {
                        r.push_back(v);
                    }
                },
                cell);
        }
    }
    return doc.dump(1) + "\n";
}

std::filesystem::path write_table(const RunConfig& config, const Table& table) {
    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    const bool json = config.format == OutputFormat::Json;
    const auto path = dir / (table.name + (json ? ".json" : ".csv"));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("output: cannot open '" + path.string() + "' for writing");
    out << (json ? render_json(config, table) : render_csv(config, table));
    if (!out) throw std::runtime_error("output: write to '" + path.string() + "' failed");
    return path;
}

RunConfig read_csv_header(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::string line;
    std::getline(in, line);
    if (line.rfind("# moebius ", 0) != 0) throw std::runtime_error("'" + path.string() + "' has no moebius header");
    std::string body;
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) body += line.substr(2) + "\n";
    return parse_config_text(body);
}

} // namespace moebius::cli
