// Loading systems and scenarios from disk, demand composition, shifting-limit
// rules and scenario transformations.
//
// System directory layout (CSV with a header row, '.' decimals):
//
//   nodes.csv       id,country,is_slack
//   lines.csv       id,from,to,susceptance_mw_per_rad,limit_mw,cross_border
//   thermal.csv     id,node,tech,pmax_mw,ramp_up_mw_h,ramp_down_mw_h,voc,fuel,emi,
//                   candidate,inv_eur_mw_a,alpha,scr_up,scr_dn,tcr_up,tcr_dn,res_target
//                   [,p_init_mw]
//   storage.csv     id,node,kind,pch_mw,pdis_mw,emax_mwh,eta_ch,eta_dis,soc0_mwh,
//                   socmin_end_mwh,voc,candidate,inv_eur_mw_a,alpha
//                   [,scr_up,scr_dn,tcr_up,tcr_dn]
//   renewable.csv   id,node,tech,cap_mw,voc,candidate,inv_eur_mw_a,alpha,res_target
//   shift.csv       node,e_hr_max_mw,e_day_max_mwh,l_hr_max_mw,l_day_max_mwh   (optional)
//   series/demand_heat_pump.csv, demand_e_mobility.csv, demand_hydrogen.csv,
//          demand_base.csv      one column per node id
//   series/availability.csv     one column per renewable unit id
//   series/inflow.csv           one column per storage id         (optional)
//   series/exogenous.csv        one column per node id            (optional)
//   series/reserve.csv          scr_up,scr_dn,tcr_up,tcr_dn        (optional)
//
// The horizon is the row count of series/demand_base.csv; every series must
// match it.

#pragma once

#include <filesystem>
#include <vector>

#include "gep/csv.hpp"
#include "gep/types.hpp"

namespace gep {

/// Loads and validates a system directory. Throws InputError on missing
/// files, malformed rows (with file and line) and aggregated validation
/// violations.
SystemModel load_system(const std::filesystem::path& dir);

/// Writes a system in the layout read by load_system, numbers with 9
/// significant digits.
void write_system(const SystemModel& system, const std::filesystem::path& dir);

ScenarioConfig load_scenario(const std::filesystem::path& path);
std::vector<ScenarioConfig> load_scenario_matrix(const std::filesystem::path& path);
void write_scenario(const ScenarioConfig& config, const std::filesystem::path& path);

struct EmobilityShiftLimits {
    double e_day_max = 0.0;  // MWh
    double e_hr_max = 0.0;   // MW
};

struct DsmShiftLimits {
    double l_hr_max = 0.0;   // MW
    double l_day_max = 0.0;  // MWh
};

/// A `share` of the annual e-mobility energy may be shifted, split evenly over
/// `days`, and each day's allowance may be spread over `spread_hours`.
EmobilityShiftLimits derive_emob_shift_limits(double annual_em_demand, double share = 0.10,
                                              double spread_hours = 10.0, double days = 365.0);

/// The hourly limit is the DSM capacity; the daily limit allows that power
/// for `hours_per_day` hours.
DsmShiftLimits derive_dsm_shift_limits(double dsm_capacity, double hours_per_day = 3.0);

/// Total nodal demand at hour t: heat pumps, e-mobility, hydrogen and base.
double compose_demand(const DemandProfile& profile, std::size_t t);
Series total_demand(const DemandProfile& profile);

/// Capital recovery factor; 1/lifetime when the rate is zero.
double annuity_factor(double rate, double lifetime);

/// Returns a copy of `system` transformed for one experiment: gas candidates
/// dropped, shifting zeroed, cross-border limits and gas fuel prices scaled,
/// and series truncated to the configured horizon.
SystemModel apply_scenario(const SystemModel& system, const ScenarioConfig& config);

}  // namespace gep
