// Assembly of the expansion-planning LP from a (scenario-applied) system.
//
// Columns come in dense blocks, each laid out entity-major then hour-major,
// with entities ordered by id:
//
//   thermal p, thermal reserves (4 products), storage discharge / charge /
//   state of charge / spill, storage reserves (4 products), renewable p,
//   investment fractions (thermal, storage, renewable candidates), load shed,
//   e-mobility up/down shift, other-load up/down shift, voltage angle.
//
// Nodal injections are not columns: line flows B*(theta_from - theta_to) are
// substituted straight into the nodal balance rows.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gep/lp_problem.hpp"
#include "gep/types.hpp"

namespace gep {

/// Contiguous column block of `entities * hours` variables.
struct ColumnBlock {
    std::size_t start = 0;
    std::size_t entities = 0;
    std::size_t hours = 0;

    std::size_t size() const { return entities * hours; }
    std::size_t at(std::size_t slot, std::size_t t) const { return start + slot * hours + t; }
};

class VariableIndex {
public:
    VariableIndex() = default;
    explicit VariableIndex(const SystemModel& system);

    std::size_t horizon() const { return T_; }
    std::size_t num_columns() const { return total_; }

    std::size_t thermal_p(std::size_t unit, std::size_t t) const { return thermal_p_.at(thermal_slot_[unit], t); }
    std::size_t thermal_reserve(std::size_t unit, ReserveProduct p, std::size_t t) const {
        return thermal_res_[static_cast<std::size_t>(p)].at(thermal_slot_[unit], t);
    }
    std::size_t discharge(std::size_t unit, std::size_t t) const { return dis_.at(storage_slot_[unit], t); }
    std::size_t charge(std::size_t unit, std::size_t t) const { return ch_.at(storage_slot_[unit], t); }
    std::size_t soc(std::size_t unit, std::size_t t) const { return soc_.at(storage_slot_[unit], t); }
    std::size_t spill(std::size_t unit, std::size_t t) const { return spill_.at(storage_slot_[unit], t); }
    std::size_t storage_reserve(std::size_t unit, ReserveProduct p, std::size_t t) const {
        return storage_res_[static_cast<std::size_t>(p)].at(storage_slot_[unit], t);
    }
    std::size_t renewable_p(std::size_t unit, std::size_t t) const { return renew_p_.at(renew_slot_[unit], t); }

    std::optional<std::size_t> thermal_invest(std::size_t unit) const { return thermal_inv_[unit]; }
    std::optional<std::size_t> storage_invest(std::size_t unit) const { return storage_inv_[unit]; }
    std::optional<std::size_t> renewable_invest(std::size_t unit) const { return renew_inv_[unit]; }

    std::size_t shed(std::size_t node, std::size_t t) const { return shed_.at(node_slot_[node], t); }
    std::size_t emob_up(std::size_t node, std::size_t t) const { return e_up_.at(node_slot_[node], t); }
    std::size_t emob_down(std::size_t node, std::size_t t) const { return e_down_.at(node_slot_[node], t); }
    std::size_t load_up(std::size_t node, std::size_t t) const { return l_up_.at(node_slot_[node], t); }
    std::size_t load_down(std::size_t node, std::size_t t) const { return l_down_.at(node_slot_[node], t); }
    std::size_t angle(std::size_t node, std::size_t t) const { return theta_.at(node_slot_[node], t); }

    /// Entity indices in column order (sorted by id).
    const std::vector<std::size_t>& thermal_order() const { return thermal_order_; }
    const std::vector<std::size_t>& storage_order() const { return storage_order_; }
    const std::vector<std::size_t>& renewable_order() const { return renew_order_; }
    const std::vector<std::size_t>& node_order() const { return node_order_; }

    /// All blocks in column order, for layout checks.
    std::vector<ColumnBlock> blocks() const;
    std::size_t num_candidates() const { return num_candidates_; }

private:
    std::size_t T_ = 0;
    std::size_t total_ = 0;
    std::size_t num_candidates_ = 0;
    std::vector<std::size_t> thermal_order_, storage_order_, renew_order_, node_order_;
    std::vector<std::size_t> thermal_slot_, storage_slot_, renew_slot_, node_slot_;
    ColumnBlock thermal_p_;
    ColumnBlock thermal_res_[kReserveProducts];
    ColumnBlock dis_, ch_, soc_, spill_;
    ColumnBlock storage_res_[kReserveProducts];
    ColumnBlock renew_p_;
    ColumnBlock invest_;
    ColumnBlock shed_, e_up_, e_down_, l_up_, l_down_, theta_;
    std::vector<std::optional<std::size_t>> thermal_inv_, storage_inv_, renew_inv_;
};

/// Columns of the LP with names and default bounds ([0, inf), free angles),
/// no rows yet.
LPProblem make_columns(const SystemModel& system, const VariableIndex& index);

/// Objective coefficients: annualized investment per candidate, marginal cost
/// per MWh of thermal, storage discharge and renewable output, and the load
/// shedding penalty.
std::vector<double> build_objective(const SystemModel& system, const ScenarioConfig& config, const VariableIndex& index);

void add_thermal_constraints(const SystemModel& system, const VariableIndex& index, LPProblem& lp);
void add_storage_constraints(const SystemModel& system, const VariableIndex& index, LPProblem& lp);
void add_renewable_constraints(const SystemModel& system, const ScenarioConfig& config, const VariableIndex& index,
                               LPProblem& lp);
void add_network_constraints(const SystemModel& system, const VariableIndex& index, LPProblem& lp);
void add_shifting_constraints(const SystemModel& system, const ScenarioConfig& config, const VariableIndex& index,
                              LPProblem& lp);
void add_reserve_constraints(const SystemModel& system, const VariableIndex& index, LPProblem& lp);

/// A reserve product is active when its requirement is positive in some hour.
/// Inactive products keep their columns fixed at zero and add no rows.
std::array<bool, kReserveProducts> active_reserve_products(const SystemModel& system);

struct BuiltLp {
    LPProblem problem;
    VariableIndex index;
};

/// Full LP for one system and scenario. Deterministic: identical inputs give
/// identical problems.
BuiltLp build_lp(const SystemModel& system, const ScenarioConfig& config);

/// Row index by name, or nullopt.
std::optional<std::size_t> find_row(const LPProblem& lp, const std::string& name);

}  // namespace gep
