#include <gtest/gtest.h>

#include <set>

#include "gep/formulation.hpp"
#include "gep/ingest.hpp"
#include "gep/simplex.hpp"
#include "support/audit.hpp"
#include "support/builders.hpp"

namespace gep {
namespace {

namespace fs = std::filesystem;
using namespace gep::testing;

const fs::path kData = GEP_DATA_DIR;

struct Solved {
    BuiltLp built;
    Solution sol;

    double at(std::size_t col) const { return sol.values[col]; }
};

Solved build_and_solve(const SystemModel& s, const ScenarioConfig& c = {}) {
    Solved out{build_lp(s, c), {}};
    out.sol = solve(out.built.problem);
    return out;
}

void expect_audit_clean(const SystemModel& s, const ScenarioConfig& c, const Solved& r) {
    const auto rep = audit_solution(s, c, r.built.index, r.sol.values);
    EXPECT_TRUE(rep.ok()) << rep.summary();
}

// Objective ---------------------------------------------------------------

TEST(Objective, NoCandidatesNoLoadCostsNothing) {
    const SystemModel s = single_node(24, 0.0, 50.0, 30.0);
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_EQ(r.sol.objective, 0.0);
    EXPECT_EQ(r.built.index.num_candidates(), 0u);
}

TEST(Objective, Coefficients) {
    SystemModel s = single_node(2, 10.0, 50.0, 0.0);
    s.thermal_units[0].cost_voc = 3.0;
    s.thermal_units[0].cost_fuel = 20.0;
    s.thermal_units[0].cost_emi = 7.0;
    ThermalUnit gas = make_thermal("SYN", "N1", 500.0, 308.8, ThermalTech::gas_syn);
    gas.is_candidate = true;
    gas.inv_cost_annual = 76'500.0;
    s.thermal_units.push_back(gas);
    StorageUnit bat = make_storage("BAT", "N1", StorageKind::battery, 100.0, 100.0, 400.0, 2);
    bat.cost_voc = 0.5;
    bat.is_candidate = true;
    bat.inv_cost_annual = 204'000.0;
    bat.annuity_alpha = 0.5;
    s.storage_units.push_back(bat);
    RenewableUnit pv = make_renewable("PV", "N1", RenewableTech::pv, 50.0, 0.5, 2);
    pv.cost_voc = 1.0;
    s.renewable_units.push_back(pv);

    const VariableIndex ix(s);
    const auto c = build_objective(s, ScenarioConfig{}, ix);
    ASSERT_EQ(c.size(), ix.num_columns());
    EXPECT_DOUBLE_EQ(c[*ix.thermal_invest(1)], 38'250'000.0);
    EXPECT_DOUBLE_EQ(c[*ix.storage_invest(0)], 0.5 * 204'000.0 * 100.0);
    EXPECT_DOUBLE_EQ(c[ix.thermal_p(0, 1)], 30.0);
    EXPECT_DOUBLE_EQ(c[ix.thermal_p(1, 0)], 308.8);
    EXPECT_DOUBLE_EQ(c[ix.discharge(0, 0)], 0.5);
    EXPECT_DOUBLE_EQ(c[ix.renewable_p(0, 1)], 1.0);
    EXPECT_DOUBLE_EQ(c[ix.shed(0, 0)], 10'000.0);

    std::set<std::size_t> priced{*ix.thermal_invest(1), *ix.storage_invest(0)};
    for (std::size_t t = 0; t < 2; ++t) {
        priced.insert({ix.thermal_p(0, t), ix.thermal_p(1, t), ix.discharge(0, t), ix.renewable_p(0, t), ix.shed(0, t)});
    }
    for (std::size_t col = 0; col < c.size(); ++col) {
        if (!priced.count(col)) EXPECT_EQ(c[col], 0.0) << col;
    }

    ScenarioConfig voll;
    voll.cost_load_shed = 3000.0;
    EXPECT_DOUBLE_EQ(build_objective(s, voll, ix)[ix.shed(0, 1)], 3000.0);
}

// Thermal ------------------------------------------------------------------

TEST(Thermal, ExistingCapacityIsAColumnBound) {
    const SystemModel s = single_node(3, 10.0, 100.0, 1.0);
    const BuiltLp b = build_lp(s, {});
    for (std::size_t t = 0; t < 3; ++t) {
        EXPECT_EQ(b.problem.col_upper[b.index.thermal_p(0, t)], 100.0);
        EXPECT_EQ(b.problem.col_lower[b.index.thermal_p(0, t)], 0.0);
    }
    EXPECT_FALSE(find_row(b.problem, "cap_G1_0"));
}

TEST(Thermal, CandidateRampRowsScaleWithInvestment) {
    SystemModel s = single_node(3, 10.0, 100.0, 1.0);
    ThermalUnit gas = make_thermal("CCS", "N1", 500.0, 159.5, ThermalTech::gas_ccs);
    gas.is_candidate = true;
    gas.inv_cost_annual = 135'000.0;
    gas.ramp_up = gas.ramp_down = 0.4 * gas.pmax;
    s.thermal_units.push_back(gas);
    const BuiltLp b = build_lp(s, {});
    const std::size_t u = *b.index.thermal_invest(1);
    for (const char* name : {"rampu_CCS_1", "rampd_CCS_2", "cap_CCS_0"}) {
        const auto row = find_row(b.problem, name);
        ASSERT_TRUE(row) << name;
        double coef = 0.0;
        for (const auto& e : b.problem.entries) {
            if (e.row == *row && e.col == u) coef = e.value;
        }
        EXPECT_DOUBLE_EQ(coef, std::string(name).rfind("cap", 0) == 0 ? -500.0 : -200.0) << name;
        EXPECT_EQ(b.problem.row_upper[*row], 0.0);
    }
    // Without an initial dispatch the first hour has no ramp rows.
    EXPECT_FALSE(find_row(b.problem, "rampu_CCS_0"));
}

TEST(Thermal, TwoPeriodRampShedsTheShortfall) {
    SystemModel s = single_node(2, 0.0, 100.0, 5.0);
    s.nodes[0].demand.base = {0.0, 20.0};
    s.thermal_units[0].ramp_up = 10.0;
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 1)), 10.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.shed(0, 1)), 10.0, 1e-9);
    EXPECT_NEAR(r.sol.objective, 10.0 * 5.0 + 10.0 * 10'000.0, 1e-6);
    expect_audit_clean(s, {}, r);
}

TEST(Thermal, InitialDispatchAnchorsFirstRamp) {
    SystemModel s = single_node(2, 40.0, 100.0, 5.0);
    s.thermal_units[0].ramp_up = 10.0;
    s.thermal_units[0].p_initial = 20.0;
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 0)), 30.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 1)), 40.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.shed(0, 0)), 10.0, 1e-9);
}

// Storage -----------------------------------------------------------------

TEST(Storage, BatteryChargeTelescopes) {
    SystemModel s = single_node(4, 0.0, 100.0, 1.0);
    s.storage_units.push_back(make_storage("B", "N1", StorageKind::battery, 10.0, 10.0, 100.0, 4));
    BuiltLp b = build_lp(s, {});
    for (std::size_t t = 0; t < 4; ++t) {
        b.problem.col_lower[b.index.charge(0, t)] = 10.0;
        b.problem.col_upper[b.index.discharge(0, t)] = 0.0;
    }
    const Solution sol = solve(b.problem);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    for (std::size_t t = 0; t < 4; ++t) EXPECT_NEAR(sol.values[b.index.soc(0, t)], 10.0 * (t + 1), 1e-9);
}

TEST(Storage, DamInflowAccumulates) {
    SystemModel s = single_node(3, 0.0, 100.0, 1.0);
    StorageUnit dam = make_storage("D", "N1", StorageKind::dam, 0.0, 50.0, 100.0, 3);
    dam.inflow.assign(3, 5.0);
    s.storage_units.push_back(dam);
    BuiltLp b = build_lp(s, {});
    for (std::size_t t = 0; t < 3; ++t) {
        b.problem.col_upper[b.index.discharge(0, t)] = 0.0;
        b.problem.col_upper[b.index.spill(0, t)] = 0.0;
    }
    const Solution sol = solve(b.problem);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    EXPECT_NEAR(sol.values[b.index.soc(0, 2)], 15.0, 1e-9);
}

TEST(Storage, PumpRoundTripEfficiency) {
    // 100 MWh charged at hour 0, then discharged against expensive generation.
    SystemModel s = single_node(2, 0.0, 200.0, 50.0);
    s.nodes[0].demand.base = {0.0, 200.0};
    StorageUnit pump = make_storage("P", "N1", StorageKind::pump, 100.0, 200.0, 1000.0, 2);
    pump.eta_charge = 0.9;
    pump.eta_discharge = 0.9;
    s.storage_units.push_back(pump);
    BuiltLp b = build_lp(s, {});
    b.problem.col_lower[b.index.charge(0, 0)] = 100.0;
    b.problem.col_upper[b.index.charge(0, 0)] = 100.0;
    b.problem.col_upper[b.index.discharge(0, 0)] = 0.0;
    const Solution sol = solve(b.problem);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    EXPECT_NEAR(sol.values[b.index.soc(0, 0)], 90.0, 1e-9);
    EXPECT_NEAR(sol.values[b.index.discharge(0, 1)], 100.0 * 0.9 * 0.9, 1e-9);
    EXPECT_NEAR(sol.values[b.index.soc(0, 1)], 0.0, 1e-9);
}

TEST(Storage, BatteriesCannotSpillAndCandidatesScaleTheirInitialState) {
    SystemModel s = single_node(2, 5.0, 100.0, 1.0);
    StorageUnit bat = make_storage("B", "N1", StorageKind::battery, 10.0, 10.0, 40.0, 2);
    bat.is_candidate = true;
    bat.inv_cost_annual = 1.0;
    bat.soc_initial = 20.0;
    bat.soc_final_min = 20.0;
    s.storage_units.push_back(bat);
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_EQ(r.built.problem.col_upper[r.built.index.spill(0, 0)], 0.0);
    // Building nothing is optimal and keeps the state at zero.
    EXPECT_NEAR(r.at(*r.built.index.storage_invest(0)), 0.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.soc(0, 1)), 0.0, 1e-9);
    expect_audit_clean(s, {}, r);
}

// Renewables and target ---------------------------------------------------

TEST(Renewable, AvailabilityCapsOutput) {
    SystemModel s = single_node(2, 10.0, 100.0, 50.0);
    RenewableUnit pv = make_renewable("PV", "N1", RenewableTech::pv, 20.0, 0.0, 2);
    pv.profile = {0.0, 0.25};
    s.renewable_units.push_back(pv);
    const Solved r = build_and_solve(s);
    EXPECT_EQ(r.built.problem.col_upper[r.built.index.renewable_p(0, 0)], 0.0);
    EXPECT_NEAR(r.at(r.built.index.renewable_p(0, 1)), 5.0, 1e-9);
}

TEST(Renewable, TargetRowRightHandSide) {
    const SystemModel s = load_system(kData / "desk");
    ScenarioConfig c;
    c.res_target = 25'000'000.0;
    const BuiltLp b = build_lp(s, c);
    const auto row = find_row(b.problem, "res_target");
    ASSERT_TRUE(row);
    EXPECT_EQ(b.problem.row_lower[*row], 25'000'000.0);
    EXPECT_EQ(b.problem.row_upper[*row], kInf);
    EXPECT_FALSE(find_row(build_lp(s, {}).problem, "res_target"));
}

TEST(Renewable, TargetForcesFullCandidateBuild) {
    SystemModel s = single_node(2, 10.0, 100.0, 1.0);
    RenewableUnit pv = make_renewable("PV", "N1", RenewableTech::pv, 10.0, 0.5, 2);
    pv.is_candidate = true;
    pv.inv_cost_annual = 1000.0;
    s.renewable_units.push_back(pv);
    ScenarioConfig c;
    c.res_target = 10.0;
    const Solved r = build_and_solve(s, c);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(*r.built.index.renewable_invest(0)), 1.0, 1e-9);
    expect_audit_clean(s, c, r);

    c.res_target = 10.5;
    EXPECT_EQ(build_and_solve(s, c).sol.status, SolveStatus::infeasible);
}

TEST(Renewable, RunOfRiverDoesNotCountTowardTarget) {
    SystemModel s = single_node(1, 10.0, 100.0, 1.0);
    s.renewable_units.push_back(make_renewable("ROR", "N1", RenewableTech::ror, 10.0, 1.0, 1));
    s.thermal_units[0].counts_toward_res_target = false;
    ScenarioConfig c;
    c.res_target = 1.0;
    EXPECT_EQ(build_and_solve(s, c).sol.status, SolveStatus::infeasible);
}

// Network -----------------------------------------------------------------

TEST(Network, SingleNodeDispatch) {
    const SystemModel s = single_node(1, 10.0, 15.0, 10.0);
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 0)), 10.0, 1e-9);
    EXPECT_NEAR(r.sol.objective, 100.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.shed(0, 0)), 0.0, 1e-12);
}

TEST(Network, TriangleSplitsTwoToOne) {
    const SystemModel s = triangle_system(30.0);
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    const auto& ix = r.built.index;
    auto flow = [&](std::size_t f, std::size_t t) { return 100.0 * (r.at(ix.angle(f, 0)) - r.at(ix.angle(t, 0))); };
    EXPECT_NEAR(flow(0, 2), 20.0, 1e-6);
    EXPECT_NEAR(flow(0, 1), 10.0, 1e-6);
    EXPECT_NEAR(flow(1, 2), 10.0, 1e-6);
    EXPECT_EQ(r.at(ix.angle(0, 0)), 0.0);
    expect_audit_clean(s, {}, r);
}

TEST(Network, LineLimitForcesRemoteShedding) {
    SystemModel s = empty_system(1);
    s.nodes.push_back(make_node("A", 1, 0.0, true));
    s.nodes.push_back(make_node("B", 1, 50.0));
    s.lines.push_back(make_line("AB", "A", "B", 10.0, 30.0));
    s.thermal_units.push_back(make_thermal("G", "A", 100.0, 1.0));
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.shed(1, 0)), 20.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 0)), 30.0, 1e-9);
    expect_audit_clean(s, {}, r);
}

TEST(Network, NegativeLoadCannotBeShed) {
    SystemModel s = single_node(1, -5.0, 10.0, 1.0);
    s.nodes[0].exogenous_injection = Series{-5.0};
    const Solved r = build_and_solve(s);
    EXPECT_EQ(r.built.problem.col_upper[r.built.index.shed(0, 0)], 0.0);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.sol.objective, 0.0, 1e-12);
}

TEST(Network, ExogenousInjectionFeedsTheNode) {
    SystemModel s = single_node(2, 10.0, 10.0, 7.0);
    s.nodes[0].exogenous_injection = Series{4.0, -3.0};
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 0)), 6.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 1)), 10.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.shed(0, 1)), 3.0, 1e-9);
}

// Shifting ----------------------------------------------------------------

TEST(Shifting, ZeroLimitsFixColumns) {
    const SystemModel s = peak_day_system();
    const BuiltLp b = build_lp(s, {});
    for (std::size_t t = 0; t < 24; ++t) {
        for (std::size_t col : {b.index.emob_up(0, t), b.index.emob_down(0, t), b.index.load_up(0, t),
                                b.index.load_down(0, t)}) {
            EXPECT_EQ(b.problem.col_upper[col], 0.0);
        }
    }
    EXPECT_FALSE(find_row(b.problem, "ebal_N1_0"));
}

TEST(Shifting, DownShiftLimitedByEmobilityDemand) {
    SystemModel s = single_node(24, 10.0, 100.0, 1.0);
    s.nodes[0].demand.e_mobility.assign(24, 3.0);
    s.nodes[0].demand.e_mobility[5] = 8.0;
    s.nodes[0].shift = {5.0, 10.0, 0.0, 0.0};
    const BuiltLp b = build_lp(s, {});
    EXPECT_EQ(b.problem.col_upper[b.index.emob_down(0, 0)], 3.0);
    EXPECT_EQ(b.problem.col_upper[b.index.emob_down(0, 5)], 5.0);
    EXPECT_EQ(b.problem.col_upper[b.index.emob_up(0, 0)], 5.0);
}

TEST(Shifting, PeakDayMicroInstance) {
    SystemModel s = peak_day_system();
    const Solved rigid = build_and_solve(s);
    ASSERT_EQ(rigid.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(rigid.sol.objective, 10.0 * (23 * 10 + 15) + 10'000.0 * 5, 1e-6);

    s.nodes[0].shift = {5.0, 10.0, 0.0, 0.0};
    const Solved flexible = build_and_solve(s);
    ASSERT_EQ(flexible.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(flexible.sol.objective, 10.0 * 250, 1e-6);
    EXPECT_NEAR(flexible.at(flexible.built.index.emob_down(0, 12)), 5.0, 1e-9);
    EXPECT_NEAR(flexible.at(flexible.built.index.shed(0, 12)), 0.0, 1e-9);
    expect_audit_clean(s, {}, flexible);

    ScenarioConfig off;
    off.allow_shifting = false;
    EXPECT_NEAR(build_and_solve(s, off).sol.objective, rigid.sol.objective, 1e-6);
}

TEST(Shifting, OtherLoadsShiftToo) {
    SystemModel s = single_node(24, 10.0, 15.0, 10.0);
    s.nodes[0].demand.base[3] = 20.0;
    s.nodes[0].shift = {0.0, 0.0, 5.0, 10.0};
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.sol.objective, 10.0 * 250, 1e-6);
    expect_audit_clean(s, {}, r);
}

TEST(Shifting, DailyEnergyLimitBinds) {
    SystemModel s = peak_day_system();
    s.nodes[0].shift = {5.0, 6.0, 0.0, 0.0};  // 3 MWh down, 3 MWh up
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.shed(0, 12)), 2.0, 1e-9);
    EXPECT_NEAR(r.sol.objective, 10.0 * 250 - 10.0 * 2 + 10'000.0 * 2, 1e-6);
}

TEST(Shifting, EachDayBalancesSeparately) {
    // A peak on day 2 cannot borrow from day 1.
    SystemModel s = single_node(48, 0.0, 15.0, 10.0);
    s.nodes[0].demand.e_mobility.assign(48, 10.0);
    s.nodes[0].demand.e_mobility[30] = 30.0;
    s.nodes[0].shift = {5.0, 10.0, 0.0, 0.0};
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.shed(0, 30)), 10.0, 1e-9);
    expect_audit_clean(s, {}, r);
}

// Reserves ----------------------------------------------------------------

TEST(Reserve, ZeroRequirementsAddNothing) {
    const SystemModel s = single_node(3, 10.0, 100.0, 1.0);
    const Solved r = build_and_solve(s);
    for (std::size_t p = 0; p < kReserveProducts; ++p) {
        for (std::size_t t = 0; t < 3; ++t) {
            EXPECT_EQ(r.at(r.built.index.thermal_reserve(0, static_cast<ReserveProduct>(p), t)), 0.0);
        }
    }
    EXPECT_FALSE(find_row(r.built.problem, "head_G1_0"));
}

TEST(Reserve, HeadroomMakesForcedDispatchInfeasible) {
    // Ramp-down limit 0 from an initial 90 MW pins p at 90 MW.
    SystemModel s = single_node(1, 90.0, 100.0, 1.0);
    s.thermal_units[0].p_initial = 90.0;
    s.thermal_units[0].ramp_down = 0.0;
    s.reserve[ReserveProduct::scr_up] = {20.0};
    EXPECT_EQ(build_and_solve(s).sol.status, SolveStatus::infeasible);

    s.reserve[ReserveProduct::scr_up] = {10.0};
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    expect_audit_clean(s, {}, r);
}

TEST(Reserve, FirstHourReserveLimitedByRampRate) {
    SystemModel s = single_node(1, 50.0, 100.0, 1.0);
    s.thermal_units[0].ramp_up = 10.0;
    s.reserve[ReserveProduct::scr_up] = {20.0};
    EXPECT_EQ(build_and_solve(s).sol.status, SolveStatus::infeasible);
    s.reserve[ReserveProduct::scr_up] = {10.0};
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_TRUE(find_row(r.built.problem, "rampu_G1_0"));
    EXPECT_FALSE(find_row(r.built.problem, "rampd_G1_0"));
    expect_audit_clean(s, {}, r);
}

TEST(Reserve, FeasibleHeadroom) {
    SystemModel s = single_node(1, 50.0, 100.0, 1.0);
    s.reserve[ReserveProduct::scr_up] = {20.0};
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 0)), 50.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.thermal_reserve(0, ReserveProduct::scr_up, 0)), 20.0, 1e-9);
    expect_audit_clean(s, {}, r);
}

TEST(Reserve, FootroomAndEligibility) {
    SystemModel s = single_node(1, 40.0, 100.0, 1.0);
    s.thermal_units.push_back(make_thermal("G2", "N1", 100.0, 50.0));
    s.thermal_units[0].reserve_eligible = {true, false, true, true};
    s.reserve[ReserveProduct::scr_down] = {30.0};
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    // Only the expensive G2 may provide downward reserve, so it runs at 30 MW.
    EXPECT_NEAR(r.at(r.built.index.thermal_p(1, 0)), 30.0, 1e-9);
    EXPECT_NEAR(r.at(r.built.index.thermal_p(0, 0)), 10.0, 1e-9);
    EXPECT_NEAR(r.sol.objective, 10.0 * 1.0 + 30.0 * 50.0, 1e-6);
    EXPECT_EQ(r.built.problem.col_upper[r.built.index.thermal_reserve(0, ReserveProduct::scr_down, 0)], 0.0);
    expect_audit_clean(s, {}, r);
}

TEST(Reserve, StorageContributes) {
    SystemModel s = single_node(2, 10.0, 100.0, 1.0);
    s.thermal_units[0].reserve_eligible = {false, false, false, false};
    StorageUnit bat = make_storage("B", "N1", StorageKind::battery, 20.0, 20.0, 100.0, 2);
    bat.soc_initial = 50.0;
    s.storage_units.push_back(bat);
    s.reserve[ReserveProduct::tcr_up] = {15.0, 15.0};
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_NEAR(r.at(r.built.index.storage_reserve(0, ReserveProduct::tcr_up, 1)), 15.0, 1e-9);
    expect_audit_clean(s, {}, r);

    s.reserve[ReserveProduct::tcr_up] = {25.0, 0.0};
    EXPECT_EQ(build_and_solve(s).sol.status, SolveStatus::infeasible);
}

// Assembly ----------------------------------------------------------------

TEST(BuildLp, EmptySystemIsTriviallyOptimal) {
    SystemModel s = empty_system(1);
    s.nodes.push_back(make_node("N", 1, 0.0, true));
    const Solved r = build_and_solve(s);
    ASSERT_EQ(r.sol.status, SolveStatus::optimal);
    EXPECT_EQ(r.sol.objective, 0.0);
    // One node, one hour: shed, four shift columns and the slack angle, all
    // pinned at zero.
    EXPECT_EQ(r.built.problem.num_cols(), 6u);
    for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(r.built.problem.col_upper[c], 0.0) << c;
}

std::size_t expected_columns(const SystemModel& s) {
    std::size_t candidates = 0;
    for (const auto& u : s.thermal_units) candidates += u.is_candidate;
    for (const auto& u : s.storage_units) candidates += u.is_candidate;
    for (const auto& u : s.renewable_units) candidates += u.is_candidate;
    const std::size_t T = s.horizon;
    // thermal: p + 4 reserves; storage: dis, ch, soc, spill + 4 reserves;
    // renewable: p; nodes: shed, 4 shifts, angle.
    return s.thermal_units.size() * T * 5 + s.storage_units.size() * T * 8 + s.renewable_units.size() * T +
           candidates + s.nodes.size() * T * 6;
}

TEST(BuildLp, ColumnCountsMatchClosedForm) {
    const SystemModel tiny = load_system(kData / "tiny");
    EXPECT_EQ(build_lp(tiny, {}).problem.num_cols(), 24u * 5 + 2 * 24 * 6);
    const SystemModel desk = load_system(kData / "desk");
    const BuiltLp b = build_lp(desk, {});
    EXPECT_EQ(b.problem.num_cols(), expected_columns(desk));
    EXPECT_EQ(b.problem.num_cols(), 48u * (10 * 5 + 5 * 8 + 10 + 4 * 6) + 12);
    EXPECT_EQ(b.index.num_columns(), b.problem.num_cols());
}

TEST(BuildLp, BlocksAreDisjointAndDense) {
    const SystemModel desk = load_system(kData / "desk");
    const BuiltLp b = build_lp(desk, {});
    std::size_t next = 0;
    for (const auto& block : b.index.blocks()) {
        EXPECT_EQ(block.start, next);
        next += block.size();
    }
    EXPECT_EQ(next, b.index.num_columns());
    EXPECT_TRUE(check_structure(b.problem).empty());
    std::set<std::string> cols(b.problem.col_names.begin(), b.problem.col_names.end());
    std::set<std::string> rows(b.problem.row_names.begin(), b.problem.row_names.end());
    EXPECT_EQ(cols.size(), b.problem.num_cols());
    EXPECT_EQ(rows.size(), b.problem.num_rows());
}

TEST(BuildLp, ColumnsFollowIdOrder) {
    SystemModel s = single_node(2, 10.0, 100.0, 1.0);
    s.thermal_units.insert(s.thermal_units.begin(), make_thermal("Z", "N1", 10.0, 1.0));
    const VariableIndex ix(s);
    EXPECT_LT(ix.thermal_p(1, 0), ix.thermal_p(0, 0));  // G1 before Z
    EXPECT_EQ(ix.thermal_p(1, 1), ix.thermal_p(1, 0) + 1);
}

TEST(BuildLp, Deterministic) {
    const SystemModel desk = load_system(kData / "desk");
    const ScenarioConfig c = load_scenario(kData / "desk/baseline.json");
    EXPECT_TRUE(build_lp(desk, c).problem == build_lp(desk, c).problem);
}

}  // namespace
}  // namespace gep
