// run.hpp - experiment drivers behind the command-line subcommands

#pragma once

#include <moebius/cli/config.hpp>
#include <moebius/cli/output.hpp>
#include <moebius/lattice.hpp>
#include <moebius/transport.hpp>

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace moebius::cli {

LadderSpec<double> ladder_from_config(const RunConfig& config, Boundary boundary);
LeadSpec<double> leads_from_config(const RunConfig& config);

/// Tables produced by one experiment, without touching the filesystem.
std::vector<Table> compute_tables(const RunConfig& config, std::ostream& summary);

/// Validates, computes and writes every table; a short summary goes to `summary`.
std::vector<std::filesystem::path> run(const RunConfig& config, std::ostream& summary);

} // namespace moebius::cli
