#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "genfield/colombeau.hpp"
#include "genfield/fields.hpp"

namespace genfield {

// Config rejected before any computation (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int format_version = 1;
    int d = 1;
    int K = 3;
    double L = 6.283185307179586;
    double m = 1.0;
    int n_max = 4;
    std::string profile = "standard";
    std::uint64_t seed = 0;
    EpsSchedule eps;
    double tol_matrix = 1e-10;  // loose matrix-identity comparisons
    double tol_slope = 0.1;     // log-log slope pins
    std::vector<std::string> suites;
    std::string report_path;  // empty = stdout only
    std::string csv_path;     // empty = no CSV
};

// Strict parse: unknown keys anywhere are an error, as are out-of-range values.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);

// JSON Schema describing the accepted config document.
nlohmann::json config_schema();

// Canonical echo of a parsed config (defaults materialized, keys sorted).
nlohmann::json config_to_json(const RunConfig& cfg);

struct SuiteRecord {
    std::string quantity;
    double measured = 0.0;
    double predicted = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string note;  // empty = omitted from the report
};

struct SuiteResult {
    std::string id;
    std::string status;  // "pass" | "fail" | "evidence"
    std::vector<SuiteRecord> records;
    double runtime_ms = 0.0;
};

struct RunReport {
    RunConfig config;
    std::vector<SuiteResult> suites;  // sorted by id
    double total_ms = 0.0;
    std::string generated_at;  // ISO-8601 UTC
};

// id -> one-line description, in canonical (sorted) order
const std::vector<std::pair<std::string, std::string>>& suite_directory();
bool is_known_suite(const std::string& id);

// Runs the configured suites (optionally narrowed to `only`, which must be a
// subset of the known ids). Throws ConfigError for bad narrowing and
// std::exception for internal failures.
RunReport run_suites(const RunConfig& cfg, const std::vector<std::string>& only = {});

// Everything outside the "timing" subtree is a pure function of the config,
// so two runs with equal configs produce byte-identical dumps after erasing
// "timing".
nlohmann::json report_to_json(const RunReport& report);
std::string report_to_csv(const RunReport& report);

// true when no suite failed (evidence-status suites do not gate)
bool all_suites_passed(const RunReport& report);

}  // namespace genfield
