// Command-line front end: parses flags and hands over to shp::cli::execute.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "shp/cli/commands.hpp"
#include "shp/cli/config.hpp"

int main(int argc, char** argv) {
    using namespace shp::cli;

    CLI::App app{"Spin, little-group and two-electron interference toolkit"};
    app.require_subcommand(1);

    std::string config;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::string out;
    std::string format;

    app.add_option("--config", config, "flat key = value config file");
    app.add_option("--seed", seed, "random seed for sampled suites");
    app.add_option("--samples", samples, "samples per suite, scan points or steps");
    app.add_option("--out", out, "write the output here instead of stdout");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    const char* help[] = {
        "run the identity suites and report deviations",
        "Wigner rotation for two successive boosts",
        "coincidence scan versus detection-time difference",
        "classical trajectory or quantum packet evolution",
        "physical constants and unit conversions",
    };
    for (std::size_t i = 0; i < command_names().size(); ++i) {
        app.add_subcommand(command_names()[i], help[i])->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    RunConfig run;
    if (app.count("--config")) run.config_path = config;
    if (app.count("--seed")) run.seed = seed;
    if (app.count("--samples")) run.samples = samples;
    if (app.count("--out")) run.out = out;
    if (app.count("--format")) run.format = parse_format(format);

    const std::string name = app.get_subcommands().front()->get_name();
    return execute(name, run, std::cout, std::cerr);
}
