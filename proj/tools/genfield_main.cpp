#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "genfield/suites.hpp"

namespace {

int run_command(const std::string& config_path, const std::vector<std::string>& only,
                const std::string& out_override) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "genfield: cannot read config file: " << config_path << "\n";
        return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();

    genfield::RunConfig cfg = genfield::parse_config_text(text.str());
    if (!out_override.empty()) cfg.report_path = out_override;

    const genfield::RunReport report = genfield::run_suites(cfg, only);
    const std::string payload = genfield::report_to_json(report).dump(2) + "\n";

    if (!cfg.report_path.empty() && cfg.report_path != "-") {
        std::ofstream f(cfg.report_path);
        if (!f) {
            std::cerr << "genfield: cannot write report: " << cfg.report_path << "\n";
            return 3;
        }
        f << payload;
    }
    if (!cfg.csv_path.empty()) {
        std::ofstream f(cfg.csv_path);
        if (!f) {
            std::cerr << "genfield: cannot write csv: " << cfg.csv_path << "\n";
            return 3;
        }
        f << genfield::report_to_csv(report);
    }

    if (cfg.report_path == "-") {
        std::cout << payload;
    } else {
        for (const auto& s : report.suites)
            std::cout << std::left << std::setw(14) << s.id << " " << s.status << "\n";
        const auto& j = genfield::report_to_json(report);
        std::cout << (genfield::all_suites_passed(report) ? "all suites passed"
                                                          : "suite failures present")
                  << " (" << j["summary"]["total"].get<int>() << " run, "
                  << j["summary"]["evidence"].get<int>() << " evidence)\n";
        if (!cfg.report_path.empty())
            std::cout << "report written to " << cfg.report_path << "\n";
    }
    return genfield::all_suites_passed(report) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suites for the truncated scalar boson field"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    std::vector<std::string> only;
    CLI::App* run = app.add_subcommand("run", "run verification suites from a JSON config");
    run->add_option("--config", config_path, "path to the run configuration (JSON)")
        ->required();
    run->add_option("--suite", only,
                    "run only these suite ids (repeatable; overrides the config list)");
    run->add_option("--out", out_override, "report path override (\"-\" for stdout)");

    CLI::App* schema = app.add_subcommand("schema", "print the config JSON schema");
    CLI::App* list = app.add_subcommand("list-suites", "print the known suite ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad arguments are a config-level failure
    }

    try {
        if (schema->parsed()) {
            std::cout << genfield::config_schema().dump(2) << "\n";
            return 0;
        }
        if (list->parsed()) {
            for (const auto& [id, desc] : genfield::suite_directory())
                std::cout << std::left << std::setw(14) << id << " " << desc << "\n";
            return 0;
        }
        return run_command(config_path, only, out_override);
    } catch (const genfield::ConfigError& e) {
        std::cerr << "genfield: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "genfield: internal error: " << e.what() << "\n";
        return 3;
    }
}
