// polariton_lab.cpp — command-line front end
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polab/config.hpp"
#include "polab/dataset.hpp"
#include "polab/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw polab::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polariton-lab: polariton spectra, sweeps and probe-response datasets"};
    std::string task, config_path, out_path;
    std::vector<std::string> overrides;
    app.add_option("task", task,
                   "one of: eigen, sweep, table1, spectrum, classify, oracle-check")
        ->required();
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_path, "output path (overrides output.path; default stdout)");
    app.add_option("--set", overrides,
                   "config override as dotted.path=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        std::string text = config_path.empty() ? std::string("{}") : read_file(config_path);
        text = polab::apply_override(text, "task=" + task);
        for (const std::string& assignment : overrides)
            text = polab::apply_override(text, assignment);

        polab::RunConfig config = polab::parse_config(text);
        if (!out_path.empty()) config.output.path = out_path;

        const polab::Dataset result = polab::run_task(config);
        polab::write_dataset(result, config.output.path, config.effective_format());
        return 0;
    } catch (const polab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
