// Domain types for the generation expansion planning model.
//
// Everything here is plain data. A SystemModel is immutable once loaded and
// may be shared read-only across concurrent scenario runs.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gep {

using Series = std::vector<double>;

enum class ThermalTech { gas_syn, gas_ccs, biomass, nuclear, other };
enum class StorageKind { dam, pump, battery };
enum class RenewableTech { pv, wind, ror };

/// Reserve products in a fixed order used for column layout and flags.
enum class ReserveProduct : std::size_t { scr_up = 0, scr_down = 1, tcr_up = 2, tcr_down = 3 };
inline constexpr std::size_t kReserveProducts = 4;

inline constexpr bool is_upward(ReserveProduct p) {
    return p == ReserveProduct::scr_up || p == ReserveProduct::tcr_up;
}

using ReserveFlags = std::array<bool, kReserveProducts>;

std::string to_string(ThermalTech t);
std::string to_string(StorageKind k);
std::string to_string(RenewableTech t);
std::string to_string(ReserveProduct p);
ThermalTech parse_thermal_tech(const std::string& s);
StorageKind parse_storage_kind(const std::string& s);
RenewableTech parse_renewable_tech(const std::string& s);

inline bool is_gas(ThermalTech t) { return t == ThermalTech::gas_syn || t == ThermalTech::gas_ccs; }

/// Hourly demand components at one node, MW. Their sum is the nodal load.
struct DemandProfile {
    Series heat_pump;
    Series e_mobility;
    Series hydrogen;
    Series base;

    bool operator==(const DemandProfile&) const = default;
};

/// Load shifting limits at one node. All zero disables shifting there.
struct ShiftSpec {
    double e_hr_max = 0.0;   // MW
    double e_day_max = 0.0;  // MWh
    double l_hr_max = 0.0;   // MW
    double l_day_max = 0.0;  // MWh

    bool enabled() const { return e_hr_max > 0 || e_day_max > 0 || l_hr_max > 0 || l_day_max > 0; }
    bool operator==(const ShiftSpec&) const = default;
};

struct BusNode {
    std::string id;
    std::string country;
    bool is_slack = false;
    DemandProfile demand;
    ShiftSpec shift;
    /// Fixed exchange with regions outside the model, MW, positive into the node.
    std::optional<Series> exogenous_injection;

    bool operator==(const BusNode&) const = default;
};

struct TransmissionLine {
    std::string id;
    std::string from_node;
    std::string to_node;
    double susceptance = 0.0;  // MW per radian
    double flow_limit = 0.0;   // MW
    bool cross_border = false;

    bool operator==(const TransmissionLine&) const = default;
};

struct ThermalUnit {
    std::string id;
    std::string node;
    ThermalTech tech = ThermalTech::other;
    double pmax = 0.0;       // MW
    double ramp_up = 0.0;    // MW/h
    double ramp_down = 0.0;  // MW/h
    double cost_voc = 0.0;   // EUR/MWh
    double cost_fuel = 0.0;
    double cost_emi = 0.0;
    bool is_candidate = false;
    double inv_cost_annual = 0.0;  // EUR/MW/a
    double annuity_alpha = 1.0;
    ReserveFlags reserve_eligible{true, true, true, true};
    bool counts_toward_res_target = false;
    /// Dispatch in the hour before the horizon. Unset: the first ramp rows are
    /// written against p at hour 0 itself.
    std::optional<double> p_initial;

    double marginal_cost() const { return cost_voc + cost_fuel + cost_emi; }

    bool operator==(const ThermalUnit&) const = default;
};

struct StorageUnit {
    std::string id;
    std::string node;
    StorageKind kind = StorageKind::battery;
    double p_charge_max = 0.0;     // MW
    double p_discharge_max = 0.0;  // MW
    double energy_max = 0.0;       // MWh
    double eta_charge = 1.0;
    double eta_discharge = 1.0;
    double soc_initial = 0.0;    // MWh
    double soc_final_min = 0.0;  // MWh
    Series inflow;               // MWh per hour
    double cost_voc = 0.0;       // EUR/MWh discharged
    bool is_candidate = false;
    double inv_cost_annual = 0.0;  // EUR/MW/a, per MW of discharge capacity
    double annuity_alpha = 1.0;
    ReserveFlags reserve_eligible{true, true, true, true};

    bool operator==(const StorageUnit&) const = default;
};

struct RenewableUnit {
    std::string id;
    std::string node;
    RenewableTech tech = RenewableTech::pv;
    double capacity = 0.0;  // MW
    Series profile;         // per-MW availability in [0,1]
    double cost_voc = 0.0;
    bool is_candidate = false;
    double inv_cost_annual = 0.0;
    double annuity_alpha = 1.0;
    bool counts_toward_res_target = false;

    bool operator==(const RenewableUnit&) const = default;
};

/// System-wide hourly reserve requirements, MW.
struct ReserveSpec {
    std::array<Series, kReserveProducts> requirement;

    const Series& operator[](ReserveProduct p) const { return requirement[static_cast<std::size_t>(p)]; }
    Series& operator[](ReserveProduct p) { return requirement[static_cast<std::size_t>(p)]; }

    bool operator==(const ReserveSpec&) const = default;
};

struct SystemModel {
    std::vector<BusNode> nodes;
    std::vector<TransmissionLine> lines;
    std::vector<ThermalUnit> thermal_units;
    std::vector<StorageUnit> storage_units;
    std::vector<RenewableUnit> renewable_units;
    ReserveSpec reserve;
    std::size_t horizon = 0;  // hours

    const BusNode* find_node(const std::string& id) const;

    bool operator==(const SystemModel&) const = default;
};

inline constexpr double kDefaultLoadShedCost = 10'000.0;  // EUR/MWh

/// One experiment: which flexibility options exist and how inputs are scaled.
struct ScenarioConfig {
    std::string name = "baseline";
    bool allow_gas_candidates = true;
    bool allow_shifting = true;
    double xborder_scale = 1.0;
    double gas_price_multiplier = 1.0;
    double res_target = 0.0;  // MWh over the horizon
    /// Hours to model; 0 means the full system horizon.
    std::size_t horizon = 0;
    double cost_load_shed = kDefaultLoadShedCost;

    bool operator==(const ScenarioConfig&) const = default;
};

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };
std::string to_string(SolveStatus s);

/// Objective split into investment, thermal, storage, renewable and load shedding costs.
struct CostBreakdown {
    double investment = 0.0;
    double thermal = 0.0;
    double storage = 0.0;
    double renewable = 0.0;
    double load_shed = 0.0;

    double total() const { return investment + thermal + storage + renewable + load_shed; }
};

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    double objective = 0.0;
    CostBreakdown term_breakdown;
    std::vector<double> values;
    std::vector<double> duals;  // row-aligned; empty unless optimal
    std::size_t iterations = 0;
};

}  // namespace gep
