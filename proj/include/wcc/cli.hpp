// cli.hpp: experiment configuration, scenario runner and report writer
// behind the wcc command-line tool.

#pragma once

#include "wcc/batch.hpp"
#include "wcc/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wcc {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Scenario { QubitDemo, Converge, BoundCheck, OracleCheck, Multibath, Custom };

std::optional<Scenario> parse_scenario(std::string_view name);
std::string_view to_string(Scenario s);

struct SpeciesConfig {
    std::string label;
    ComplexMatrix H_A;
    ComplexMatrix V;
    ComplexMatrix chi;
    double beta = 1.0;
    double lambda = 0.0;
};

struct ExperimentConfig {
    Scenario scenario = Scenario::QubitDemo;
    std::filesystem::path output_dir = "out";
    std::optional<std::uint64_t> seed;

    double omega = 1.0;
    double g = 1.0;
    std::vector<double> beta;    // per species; defaults depend on the scenario
    std::vector<double> lambda;  // per species
    double tau = 1e-2;
    std::size_t n_steps = 200;
    double t_final = 2.0;
    double dt = 1e-3;
    std::vector<double> taus;
    std::size_t n_instances = 1000;
    SuiteKind suite = SuiteKind::Mixed;
    double tau_min = 1e-4;
    double tau_max = 1e-1;

    std::optional<ComplexMatrix> H_S;
    std::vector<SpeciesConfig> species;
    std::optional<ComplexMatrix> rho0;
};

// Throws Error with ParseError (line and column in the message), SchemaError
// (names the offending key) or ValidationError (names the failed invariant).
ExperimentConfig parse_config(std::string_view json_text, std::string_view origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct ScenarioReport {
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> summary;

    bool passed() const;
};

// Writes the scenario's files into cfg.output_dir and returns the report.
ScenarioReport execute_scenario(const ExperimentConfig& cfg);

// Runs a scenario, printing one CHECK line per check to `out` and diagnostics
// to `err`. Returns 0 when every check passes, 2 on a verification failure
// and 1 on bad input.
int run_scenario(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

// Formats a double with 17 significant digits.
std::string format_number(double x);

} // namespace wcc
