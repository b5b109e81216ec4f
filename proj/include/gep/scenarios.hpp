// Scenario runs, comparison matrices and gas-price sweeps.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gep/formulation.hpp"
#include "gep/simplex.hpp"
#include "gep/types.hpp"

namespace gep {

/// Built capacity of one technology, MW.
struct TechCapacity {
    std::string tech;
    double mw = 0.0;

    bool operator==(const TechCapacity&) const = default;
};

struct ScenarioResult {
    ScenarioConfig config;
    Solution solution;
    /// The scenario-applied system the LP was built from, and its index.
    std::shared_ptr<const SystemModel> system;
    VariableIndex index;
    std::vector<TechCapacity> investments;
    /// Load shed per country over the horizon, GWh.
    std::map<std::string, double> load_shed_total;
    double objective_delta_vs_baseline = 0.0;  // percent
    /// Directory the system was loaded from, when known.
    std::string system_dir;
};

/// Raised when a scenario does not solve to optimality.
class ScenarioFailure : public std::runtime_error {
public:
    ScenarioFailure(const std::string& scenario, SolveStatus status)
        : std::runtime_error("scenario '" + scenario + "' ended " + to_string(status)), status_(status) {}

    SolveStatus status() const { return status_; }

private:
    SolveStatus status_;
};

/// apply_scenario, build_lp, solve, extract. Throws ScenarioFailure on any
/// non-optimal status.
ScenarioResult run_scenario(const SystemModel& system, const ScenarioConfig& config, const SolveOptions& opts = {});

struct MatrixResult {
    std::vector<ScenarioResult> rows;
    /// Set when a scenario failed; `rows` then holds only the scenarios that
    /// completed before it in config order.
    bool aborted = false;
    std::string failure;
    SolveStatus failure_status = SolveStatus::optimal;
};

/// Runs every config (concurrently, up to `threads` at once; 0 picks the
/// hardware concurrency) and fills objective deltas against the first one.
MatrixResult run_matrix(const SystemModel& system, const std::vector<ScenarioConfig>& configs,
                        const SolveOptions& opts = {}, unsigned threads = 0);

struct SweepRow {
    double multiplier = 1.0;
    double objective = 0.0;
    std::vector<TechCapacity> gas_investments;  // gas_syn, gas_ccs
    double gas_energy = 0.0;                    // MWh from all gas units
    ScenarioResult result;
};

/// One run per gas fuel-price multiplier. Multipliers must be >= 1 and
/// sorted ascending.
std::vector<SweepRow> gas_price_sweep(const SystemModel& system, const ScenarioConfig& base,
                                      const std::vector<double>& multipliers, const SolveOptions& opts = {},
                                      unsigned threads = 0);

/// Total energy from gas-fired thermal units, MWh.
double gas_energy(const ScenarioResult& result);

/// Result files hold the config, status, objective, breakdown and every column
/// value keyed by column name, plus the system directory so that reports can
/// rebuild the model.
void save_result(const ScenarioResult& result, const std::filesystem::path& path);
ScenarioResult load_result(const std::filesystem::path& path);

}  // namespace gep
