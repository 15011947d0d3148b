#pragma once

#include "ptolemy/model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ptolemy {

struct SuiteConfig {
    std::string model = "heisenberg";
    std::optional<int> dim;
    std::vector<std::string> suites;  // empty: all suites
    std::optional<long> samples;
    std::optional<double> tol;
    std::map<std::string, double> tolerances;  // per check id
    std::uint64_t seed = 20240611;
    std::string out;
    std::string format = "json";
    int threads = 1;
    bool timing = false;

    int effective_dim() const;
};

struct CheckRecord {
    std::string id;
    std::string suite;
    std::string anchor;
    long samples = 0;
    double max_residual = 0;
    double tol = 0;
    bool pass = false;
    std::optional<double> seconds;
    std::string note;
    std::vector<double> residuals;
};

struct Report {
    SuiteConfig config;
    std::vector<CheckRecord> checks;
    bool all_pass() const;
};

// What a check body hands back: one residual per sample plus an optional note.
struct CheckOutput {
    std::vector<double> residuals;
    std::string note;
    long samples = -1;  // defaults to residuals.size()
};

struct CheckDef {
    std::string id;
    std::string suite;
    std::string anchor;
    long default_samples = 1;
    bool scalable = true;  // whether --samples applies
    double tol_euclidean = 1e-9;
    double tol_heisenberg = 1e-9;
    std::function<CheckOutput(const ModelPtr&, long samples, Rng& rng)> run;
};

const std::vector<std::string>& all_suites();
const std::vector<CheckDef>& check_registry();

// Throws ConfigError listing every offending field.
void validate(const SuiteConfig& config);
// Reads fields from a JSON document; unknown keys are errors.
SuiteConfig config_from_json(const std::string& text, SuiteConfig base = {});

Report run_suite(const SuiteConfig& config);
CheckRecord run_check(const CheckDef& def, const SuiteConfig& config, const ModelPtr& model);

std::string emit_report(const Report& report, const std::string& format);
void write_report(const Report& report, const std::string& path, const std::string& format);

// Counts of log10 residuals in unit bins [-16,-15), ..., [-1,0), plus
// underflow (zero or below 1e-16) first and overflow (>= 1) last.
std::vector<long> residual_histogram(const std::vector<double>& residuals);

}  // namespace ptolemy
