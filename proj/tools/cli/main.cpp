#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "kpp/errors.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Travelling fronts of the delayed KPP-Fisher equation"};
    std::string command;
    std::string config_path;
    std::string output_dir;
    std::vector<std::string> settings;
    double c = 0.0;
    double tau = 0.0;
    bool svg = false;

    app.add_option("command", command, "bounds | verify | wave | simulate | certify | boundary");
    app.add_option("--config", config_path, "key = value config file");
    auto* c_opt = app.add_option("-c,--speed", c, "wave speed c >= 2");
    auto* tau_opt = app.add_option("-t,--tau", tau, "delay tau >= 0");
    app.add_option("-o,--output-dir", output_dir, "directory for csv, svg and report.txt");
    app.add_flag("--svg", svg, "also write svg plots");
    app.add_option("--set", settings, "override a config key, as key=value")->expected(1, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kpp::cli::kExitInvalidParameters;
    }

    kpp::cli::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = kpp::cli::load_config(config_path);
        if (!command.empty()) kpp::cli::apply_setting(cfg, "command", command);
        if (*c_opt) cfg.c = c;
        if (*tau_opt) cfg.tau = tau;
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (svg) cfg.emit_svg = true;
        for (const auto& kv : settings) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw kpp::ParseError(0, "--set expects key=value, got '" + kv + "'");
            kpp::cli::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
    } catch (const kpp::Error& e) {
        std::fprintf(stderr, "kpp_front_lab: %s\n", e.what());
        return kpp::cli::kExitInvalidParameters;
    }

    const auto result = kpp::cli::run(cfg);
    std::fputs(result.summary.c_str(), result.exit_code == kpp::cli::kExitOk ? stdout : stderr);
    return result.exit_code;
}
