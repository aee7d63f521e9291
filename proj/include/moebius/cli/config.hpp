// config.hpp - flat key = value run configuration for the command-line front end

#pragma once

#include <moebius/core.hpp>
#include <moebius/spectra.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moebius::cli {

enum class Experiment { Spectrum, Stark, Optical, Transmission, Decoherence };
enum class OutputFormat { Csv, Json };
enum class BoundarySelection { Moebius, Periodic, Both };
enum class LeadBand { Conduction, Valence, Custom };

std::string to_string(Experiment e);
std::string to_string(OutputFormat f);
std::optional<Experiment> parse_experiment(const std::string& name);
std::optional<OutputFormat> parse_format(const std::string& name);

/// Parse or validation failure; `line` is 0 when the problem is not tied to one line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, int line, const std::string& message);
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

struct RunConfig {
    Experiment experiment{Experiment::Spectrum};

    // ladder
    int sites{12};
    double radius{2.0};
    double half_width{0.5};
    double hopping{1.0};
    double rung_coupling{50.0};
    double field{0.0};
    BoundarySelection boundary{BoundarySelection::Both};

    // continuum / optical
    double epsilon{0.1};
    int n_min{-2};
    int n_max{2};
    int cutoff{8};
    double eta{0.1};
    std::optional<double> omega_min;
    std::optional<double> omega_max;
    int omega_points{2001};
    LevelSource levels_source{LevelSource::Continuum};
    Absorption absorption{Absorption::AllAllowed};

    // transport
    double lead_hopping{1.0};
    std::optional<double> tunneling;
    LeadBand band{LeadBand::Conduction};
    std::optional<double> lead_onsite;
    std::optional<double> energy_min;
    std::optional<double> energy_max;
    int energy_points{2000};
    int attach_left{0};
    std::optional<int> attach_right;
    bool wide_band{false};

    // dynamics
    std::optional<double> time_max;
    int time_points{2000};

    std::string output_dir{"."};
    OutputFormat format{OutputFormat::Csv};

    bool operator==(const RunConfig&) const = default;

    std::vector<Boundary> boundaries() const;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown or repeated keys are rejected.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Range and consistency checks on every physical parameter.
void validate(const RunConfig& config);

/// Every key in a fixed order, as `key = value` lines that parse back to the same config.
std::vector<std::string> format_config(const RunConfig& config);

} // namespace moebius::cli
