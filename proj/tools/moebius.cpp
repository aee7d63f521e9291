#include <moebius/cli/run.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace moebius;

int main(int argc, char** argv) {
    CLI::App app{"Moebius ladder experiments: spectrum, stark, optical, transmission, decoherence"};
    std::string experiment;
    std::string config_path;
    std::string out_dir;
    std::string format;
    app.add_option("experiment", experiment, "Experiment to run")
        ->required()
        ->check(CLI::IsMember({"spectrum", "stark", "optical", "transmission", "decoherence"}));
    app.add_option("--config", config_path, "key = value configuration file")->required();
    app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
    app.add_option("--format", format, "Output format (overrides format)")->check(CLI::IsMember({"csv", "json"}));
    CLI11_PARSE(app, argc, argv);

    cli::RunConfig config;
    try {
        config = cli::load_config(config_path);
        config.experiment = *cli::parse_experiment(experiment);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (!format.empty()) config.format = *cli::parse_format(format);
        cli::validate(config);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
        return 1;
    }

    try {
        cli::run(config, std::cout);
    } catch (const NearDegeneracy& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const SingularMatrix& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
