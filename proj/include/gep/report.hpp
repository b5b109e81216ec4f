// Plot-ready tables extracted from scenario results.

#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "gep/scenarios.hpp"

namespace gep {

/// Objective terms recomputed from column values and input costs.
CostBreakdown objective_breakdown(const SystemModel& system, const ScenarioConfig& config, const VariableIndex& index,
                                  const std::vector<double>& values);
CostBreakdown objective_breakdown(const ScenarioResult& result);

/// Built candidate capacity, u times capacity, summed per technology. Only
/// technologies with candidates appear; rows sorted by technology name.
std::vector<TechCapacity> investments_table(const SystemModel& system, const VariableIndex& index,
                                            const std::vector<double>& values);
std::vector<TechCapacity> investments_table(const ScenarioResult& result);

/// Flow on a line at hour t, MW, positive from `from_node` to `to_node`.
double line_flow(const SystemModel& system, const VariableIndex& index, const std::vector<double>& values,
                 std::size_t line, std::size_t t);

enum class Aggregation { hourly, daily, weekly };
std::size_t period_hours(Aggregation a);

/// Hour range [begin, end).
struct Window {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Production and consumption of a region per period. Imports and exports
/// cover flows on lines leaving the region, split by direction each hour, and
/// fixed exogenous exchange of the region's nodes.
struct DispatchStack {
    Aggregation aggregation = Aggregation::hourly;
    Window window;
    std::vector<std::string> production_categories;
    std::vector<std::string> consumption_categories;
    /// [period][category], MWh per period.
    std::vector<std::vector<double>> production;
    std::vector<std::vector<double>> consumption;

    std::size_t num_periods() const { return production.size(); }
    double total_production(std::size_t period) const;
    double total_consumption(std::size_t period) const;
};

inline const std::vector<std::string> kProductionCategories = {
    "gas_syn", "gas_ccs", "biomass", "nuclear", "other", "dam", "pump", "ror", "pv", "wind", "battery",
    "imports", "shift_down", "shed"};
inline const std::vector<std::string> kConsumptionCategories = {"demand", "pump_charge", "battery_charge",
                                                                "shift_up", "exports"};

/// Stack over the nodes of `country`, or the whole system when it is empty.
/// Periods are consecutive blocks from the window start; a trailing partial
/// block is dropped. Throws std::out_of_range when the window leaves the
/// horizon.
DispatchStack dispatch_stack(const SystemModel& system, const VariableIndex& index, const std::vector<double>& values,
                             Aggregation aggregation, Window window, const std::string& country = {});
DispatchStack dispatch_stack(const ScenarioResult& result, Aggregation aggregation, Window window,
                             const std::string& country = {});

enum class LevelSample { hourly, end_of_month };
inline constexpr std::size_t kHoursPerMonth = 730;

/// State of charge summed over storage units of one kind. Hourly samples are
/// MWh; end-of-month samples (hours 730k - 1) are TWh.
std::vector<double> storage_levels(const SystemModel& system, const VariableIndex& index,
                                   const std::vector<double>& values, StorageKind kind, LevelSample sample);
std::vector<double> storage_levels(const ScenarioResult& result, StorageKind kind, LevelSample sample);

/// Plain table for emission.
struct Table {
    using Cell = std::variant<std::string, double>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

Table to_table(const std::vector<TechCapacity>& investments);
Table to_table(const DispatchStack& stack);
Table to_table(const CostBreakdown& breakdown);
Table levels_table(const std::vector<double>& levels, StorageKind kind, LevelSample sample);

enum class Format { csv, json };

/// Numbers are written with 9 significant digits; CSV has a header row, JSON
/// is an array of objects with keys in column order.
std::string render(const Table& table, Format format);
void emit(const Table& table, const std::filesystem::path& path, Format format);

}  // namespace gep
