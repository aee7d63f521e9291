#include <moebius/cli/config.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace moebius::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

struct Field {
    std::string key;
    std::function<void(RunConfig&, const std::string&)> parse;
    std::function<std::string(const RunConfig&)> format;
};

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& expected) {
    throw ConfigError(key, 0, "invalid value '" + value + "', expected " + expected);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(out)) bad_value(key, value, "a finite number");
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end) bad_value(key, value, "an integer");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    bad_value(key, value, "true or false");
}

template <typename T, std::size_t N>
T parse_enum(const std::string& key, const std::string& value,
             const std::array<std::pair<const char*, T>, N>& names) {
    for (const auto& [name, v] : names)
        if (value == name) return v;
    std::string expected;
    for (const auto& [name, v] : names) expected += (expected.empty() ? "" : "|") + std::string(name);
    bad_value(key, value, expected);
}

template <typename T, std::size_t N>
std::string format_enum(T v, const std::array<std::pair<const char*, T>, N>& names) {
    for (const auto& [name, x] : names)
        if (x == v) return name;
    return "?";
}

constexpr std::array<std::pair<const char*, Experiment>, 5> experiment_names{{
    {"spectrum", Experiment::Spectrum},
    {"stark", Experiment::Stark},
    {"optical", Experiment::Optical},
    {"transmission", Experiment::Transmission},
    {"decoherence", Experiment::Decoherence},
}};
constexpr std::array<std::pair<const char*, BoundarySelection>, 3> boundary_names{{
    {"moebius", BoundarySelection::Moebius},
    {"periodic", BoundarySelection::Periodic},
    {"both", BoundarySelection::Both},
}};
constexpr std::array<std::pair<const char*, LevelSource>, 2> source_names{{
    {"continuum", LevelSource::Continuum},
    {"lattice", LevelSource::Lattice},
}};
constexpr std::array<std::pair<const char*, Absorption>, 2> absorption_names{{
    {"all", Absorption::AllAllowed},
    {"ground", Absorption::Ground},
}};
constexpr std::array<std::pair<const char*, LeadBand>, 3> band_names{{
    {"conduction", LeadBand::Conduction},
    {"valence", LeadBand::Valence},
    {"custom", LeadBand::Custom},
}};
constexpr std::array<std::pair<const char*, OutputFormat>, 2> format_names{{
    {"csv", OutputFormat::Csv},
    {"json", OutputFormat::Json},
}};

template <typename T>
Field number(const std::string& key, T RunConfig::*member) {
    return {key,
            [key, member](RunConfig& c, const std::string& v) {
                if constexpr (std::is_same_v<T, int>) c.*member = parse_int(key, v);
                else c.*member = parse_double(key, v);
            },
            [member](const RunConfig& c) {
                if constexpr (std::is_same_v<T, int>) return std::to_string(c.*member);
                else return format_double(c.*member);
            }};
}

template <typename T>
Field optional_number(const std::string& key, std::optional<T> RunConfig::*member) {
    return {key,
            [key, member](RunConfig& c, const std::string& v) {
                if (v == "auto") {
                    (c.*member).reset();
                } else if constexpr (std::is_same_v<T, int>) {
                    c.*member = parse_int(key, v);
                } else {
                    c.*member = parse_double(key, v);
                }
            },
            [member](const RunConfig& c) -> std::string {
                if (!(c.*member)) return "auto";
                if constexpr (std::is_same_v<T, int>) return std::to_string(*(c.*member));
                else return format_double(*(c.*member));
            }};
}

template <typename T, std::size_t N>
Field enumeration(const std::string& key, T RunConfig::*member, const std::array<std::pair<const char*, T>, N>& names) {
    return {key, [key, member, &names](RunConfig& c, const std::string& v) { c.*member = parse_enum(key, v, names); },
            [member, &names](const RunConfig& c) { return format_enum(c.*member, names); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        enumeration("experiment", &RunConfig::experiment, experiment_names),
        number("sites", &RunConfig::sites),
        number("radius", &RunConfig::radius),
        number("half_width", &RunConfig::half_width),
        number("hopping", &RunConfig::hopping),
        number("rung_coupling", &RunConfig::rung_coupling),
        number("field", &RunConfig::field),
        enumeration("boundary", &RunConfig::boundary, boundary_names),
        number("epsilon", &RunConfig::epsilon),
        number("n_min", &RunConfig::n_min),
        number("n_max", &RunConfig::n_max),
        number("cutoff", &RunConfig::cutoff),
        number("eta", &RunConfig::eta),
        optional_number("omega_min", &RunConfig::omega_min),
        optional_number("omega_max", &RunConfig::omega_max),
        number("omega_points", &RunConfig::omega_points),
        enumeration("levels_source", &RunConfig::levels_source, source_names),
        enumeration("absorption", &RunConfig::absorption, absorption_names),
        number("lead_hopping", &RunConfig::lead_hopping),
        optional_number("tunneling", &RunConfig::tunneling),
        enumeration("band", &RunConfig::band, band_names),
        optional_number("lead_onsite", &RunConfig::lead_onsite),
        optional_number("energy_min", &RunConfig::energy_min),
        optional_number("energy_max", &RunConfig::energy_max),
        number("energy_points", &RunConfig::energy_points),
        number("attach_left", &RunConfig::attach_left),
        optional_number("attach_right", &RunConfig::attach_right),
        {"wide_band", [](RunConfig& c, const std::string& v) { c.wide_band = parse_bool("wide_band", v); },
         [](const RunConfig& c) { return std::string(c.wide_band ? "true" : "false"); }},
        optional_number("time_max", &RunConfig::time_max),
        number("time_points", &RunConfig::time_points),
        {"output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; },
         [](const RunConfig& c) { return c.output_dir; }},
        enumeration("format", &RunConfig::format, format_names),
    };
    return table;
}

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) throw ConfigError(key, 0, message);
}

} // namespace

ConfigError::ConfigError(const std::string& key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : key + ": ") + message),
      key_(key),
      line_(line) {}

std::string to_string(Experiment e) { return format_enum(e, experiment_names); }
std::string to_string(OutputFormat f) { return format_enum(f, format_names); }

std::optional<Experiment> parse_experiment(const std::string& name) {
    for (const auto& [n, e] : experiment_names)
        if (name == n) return e;
    return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& name) {
    for (const auto& [n, f] : format_names)
        if (name == n) return f;
    return std::nullopt;
}

std::vector<Boundary> RunConfig::boundaries() const {
    switch (boundary) {
    case BoundarySelection::Moebius: return {Boundary::Moebius};
    case BoundarySelection::Periodic: return {Boundary::Periodic};
    default: return {Boundary::Moebius, Boundary::Periodic};
    }
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string raw;
    std::set<std::string> seen;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("", line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
        if (it == table.end()) throw ConfigError(key, line_no, "unknown key");
        if (!seen.insert(key).second) throw ConfigError(key, line_no, "key given more than once");
        try {
            it->parse(base, value);
        } catch (const ConfigError& e) {
            throw ConfigError(key, line_no, std::string(e.what()).substr(key.size() + 2));
        }
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), std::move(base));
}

std::vector<std::string> format_config(const RunConfig& config) {
    std::vector<std::string> lines;
    for (const auto& f : fields()) lines.push_back(f.key + " = " + f.format(config));
    return lines;
}

void validate(const RunConfig& c) {
    require(c.sites >= 3, "sites", "need N >= 3, got " + std::to_string(c.sites));
    require(c.radius > 0.0, "radius", "must be positive");
    require(c.half_width > 0.0 && c.half_width < c.radius, "half_width", "need 0 < half_width < radius");
    require(c.hopping > 0.0, "hopping", "must be positive (it sets the energy unit)");
    require(c.epsilon >= 0.0, "epsilon", "must be nonnegative");
    require(c.n_min <= c.n_max, "n_max", "need n_min <= n_max");
    require(c.cutoff >= 2, "cutoff", "need cutoff >= 2");
    require(c.eta > 0.0, "eta", "broadening must be positive");
    require(c.omega_points >= 2, "omega_points", "need at least two points");
    if (c.omega_min && c.omega_max) require(*c.omega_min < *c.omega_max, "omega_max", "need omega_min < omega_max");
    require(c.lead_hopping != 0.0, "lead_hopping", "must be nonzero");
    require(c.energy_points >= 2, "energy_points", "need at least two points");
    if (c.energy_min && c.energy_max) require(*c.energy_min < *c.energy_max, "energy_max", "need energy_min < energy_max");
    require(c.band != LeadBand::Custom || c.lead_onsite.has_value(), "lead_onsite", "required when band = custom");
    require(c.attach_left >= 0 && c.attach_left < c.sites, "attach_left", "rung index out of range");
    if (c.attach_right) {
        require(*c.attach_right >= 0 && *c.attach_right < c.sites, "attach_right", "rung index out of range");
        require(*c.attach_right != c.attach_left, "attach_right", "must differ from attach_left");
    } else if (c.experiment == Experiment::Transmission) {
        require(c.sites % 2 == 0, "sites", "antipodal lead attachment needs an even N (or set attach_right)");
    }
    require(c.time_points >= 2, "time_points", "need at least two points");
    if (c.time_max) require(*c.time_max > 0.0, "time_max", "must be positive");
    if (c.experiment == Experiment::Optical) require(c.epsilon > 0.0, "epsilon", "must be positive for optical spectra");
    if (c.experiment == Experiment::Stark) {
        require(c.n_min >= -c.cutoff + 1 && c.n_max <= c.cutoff - 1, "cutoff",
                "momentum range must lie strictly inside the cutoff");
    }
    if (c.experiment == Experiment::Decoherence || c.experiment == Experiment::Transmission) {
        require(c.field == 0.0, "field", "this experiment needs zero on-site bias");
    }
}

} // namespace moebius::cli
