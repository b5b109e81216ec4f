// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gep/formulation.hpp"
#include "gep/ingest.hpp"
#include "gep/mps.hpp"
#include "gep/report.hpp"
#include "gep/scenarios.hpp"
#include "gep/simplex.hpp"
#include "support/audit.hpp"
#include "support/builders.hpp"
#include "support/lp_oracle.hpp"

namespace fs = std::filesystem;
using namespace gep;
using namespace gep::testing;

namespace {

const fs::path kData = GEP_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Every optimal result seen along the way, for the audit and decomposition
// passes.
struct Solved {
    std::string label;
    ScenarioResult result;
};
std::vector<Solved> g_solved;

void keep(const std::string& label, const ScenarioResult& r) { g_solved.push_back({label, r}); }

Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> ncols(2, 8), nrows(1, 6);
    int compared = 0, worst_trial = -1;
    double worst = 0.0;
    for (int trial = 0; compared < 25 && trial < 200; ++trial) {
        const LPProblem p = random_lp(rng, ncols(rng), nrows(rng));
        const auto oracle = enumerate_vertices(p);
        const Solution s = solve(p);
        if (!oracle) {
            o.require(s.status == SolveStatus::infeasible, "trial " + std::to_string(trial) + " should be infeasible");
            continue;
        }
        ++compared;
        if (s.status != SolveStatus::optimal) {
            o.require(false, "trial " + std::to_string(trial) + " not optimal");
            continue;
        }
        const double gap = std::abs(s.objective - *oracle) / std::max(1.0, std::abs(*oracle));
        if (gap > worst) worst = gap, worst_trial = trial;
    }
    const double secs = seconds_since(t0);
    o.require(compared >= 20, "only " + std::to_string(compared) + " feasible LPs");
    o.require(worst <= 1e-6, "trial " + std::to_string(worst_trial) + " off by " + fmt("%.3g", worst));
    o.require(secs < 5.0, fmt("took %.2f s", secs));
    o.detail = std::to_string(compared) + " LPs, max rel gap " + fmt("%.2g", worst) + fmt(", %.2f s", secs) +
               (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome micro_instance() {
    Outcome o;
    SystemModel s = peak_day_system();
    const ScenarioResult rigid = run_scenario(s, {});
    s.nodes[0].shift = {5.0, 10.0, 0.0, 0.0};
    const ScenarioResult flex = run_scenario(s, {});
    keep("micro rigid", rigid);
    keep("micro shifting", flex);
    const double want_rigid = 10.0 * (23 * 10 + 15) + 10'000.0 * 5;
    const double want_flex = 10.0 * 250;
    o.require(std::abs(rigid.solution.objective - want_rigid) <= 1e-6, fmt("rigid %.9g", rigid.solution.objective));
    o.require(std::abs(flex.solution.objective - want_flex) <= 1e-6, fmt("shifting %.9g", flex.solution.objective));
    o.require(flex.load_shed_total.at("CH") == 0.0 || flex.load_shed_total.at("CH") < 1e-12, "shifting still sheds");
    o.detail = fmt("rigid %.6f", rigid.solution.objective) + fmt(", shifting %.6f", flex.solution.objective) +
               (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome triangle() {
    Outcome o;
    const SystemModel s = triangle_system(30.0);
    const ScenarioResult r = run_scenario(s, {});
    keep("triangle", r);
    const auto& x = r.solution.values;
    const double f12 = line_flow(*r.system, r.index, x, 0, 0);
    const double f13 = line_flow(*r.system, r.index, x, 1, 0);
    const double f23 = line_flow(*r.system, r.index, x, 2, 0);
    o.require(std::abs(f13 - 20.0) <= 1e-6, fmt("direct %.9g", f13));
    o.require(std::abs(f12 - 10.0) <= 1e-6, fmt("via B2 %.9g", f12));
    o.require(std::abs(f23 - 10.0) <= 1e-6, fmt("B2-B3 %.9g", f23));
    o.detail = fmt("flows B1-B3 %.6f", f13) + fmt(", B1-B2 %.6f", f12) + fmt(", B2-B3 %.6f MW", f23) +
               (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

struct Desk {
    SystemModel system = load_system(kData / "desk");
    MatrixResult full;
};

Outcome monotonicity(Desk& d) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    d.full = run_matrix(d.system, load_scenario_matrix(kData / "desk/scenarios.json"));
    const double secs = seconds_since(t0);
    if (d.full.aborted) {
        o.require(false, d.full.failure);
        return o;
    }
    for (const auto& r : d.full.rows) keep("desk " + r.config.name, r);
    std::map<std::string, double> obj;
    for (const auto& r : d.full.rows) obj[r.config.name] = r.solution.objective;
    auto ge = [&](const char* a, const char* b) {
        const double gap = (obj[a] - obj[b]) / std::abs(obj[a]);
        o.require(gap >= -1e-6, std::string(a) + " < " + b);
    };
    ge("NGNS", "NGWS");
    ge("NGWS", "WGWS");
    ge("NGNS", "WGNS");
    o.require(secs < 30.0, fmt("took %.1f s", secs));
    std::ostringstream s;
    for (const auto& r : d.full.rows) s << r.config.name << ' ' << fmt("%.6g", r.solution.objective) << ", ";
    o.detail = s.str() + fmt("%.1f s", secs) + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome reduced_cross_border(Desk& d) {
    Outcome o;
    const MatrixResult reduced = run_matrix(d.system, load_scenario_matrix(kData / "desk/scenarios_reduced.json"));
    if (reduced.aborted || d.full.aborted) {
        o.require(false, reduced.aborted ? reduced.failure : "full matrix missing");
        return o;
    }
    std::ostringstream s;
    for (const auto& r : reduced.rows) {
        keep("desk " + r.config.name, r);
        if (r.config.xborder_scale == 1.0) continue;
        const std::string base = r.config.name.substr(0, 4);
        const ScenarioResult* full = nullptr;
        for (const auto& f : d.full.rows) {
            if (f.config.name == base) full = &f;
        }
        if (!full) {
            o.require(false, "no full-grid run for " + r.config.name);
            continue;
        }
        const double obj_gap = (r.solution.objective - full->solution.objective) / std::abs(full->solution.objective);
        const double shed = r.load_shed_total.at("CH"), shed0 = full->load_shed_total.at("CH");
        o.require(obj_gap >= -1e-6, r.config.name + " objective fell");
        o.require(shed >= shed0 - 1e-6, r.config.name + " CH shed fell");
        s << r.config.name << fmt(" %+.2f%%", obj_gap * 100.0) << fmt(" shed %.4g", shed0)
          << fmt("->%.4g GWh, ", shed);
    }
    o.detail = s.str() + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome gas_sweep(Desk& d) {
    Outcome o;
    const ScenarioConfig base = load_scenario(kData / "desk/baseline.json");
    const auto rows = gas_price_sweep(d.system, base, {1.0, 1.25, 1.5, 1.75, 2.0});
    std::ostringstream s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        keep(fmt("sweep x%.2f", rows[i].multiplier), rows[i].result);
        s << fmt("x%.2f: ", rows[i].multiplier) << fmt("%.6g EUR ", rows[i].objective)
          << fmt("%.4g MWh gas, ", rows[i].gas_energy);
        if (i == 0) continue;
        o.require((rows[i].objective - rows[i - 1].objective) / std::abs(rows[i - 1].objective) >= -1e-6,
                  fmt("objective fell at x%.2f", rows[i].multiplier));
        o.require(rows[i].gas_energy <= rows[i - 1].gas_energy + 1e-6 * std::max(1.0, rows[i - 1].gas_energy),
                  fmt("gas energy rose at x%.2f", rows[i].multiplier));
    }
    o.detail = s.str() + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

void solve_remaining_fixtures() {
    const SystemModel tiny = load_system(kData / "tiny");
    keep("tiny", run_scenario(tiny, load_scenario(kData / "tiny/scenario.json")));
    const SystemModel catalog = load_system(kData / "catalog");
    keep("catalog", run_scenario(catalog, {}));
}

Outcome residual_audit() {
    Outcome o;
    double worst_balance = 0.0, worst_shift = 0.0;
    for (const auto& s : g_solved) {
        const auto& r = s.result;
        const AuditReport rep = audit_solution(*r.system, r.config, r.index, r.solution.values);
        o.require(rep.ok(), s.label + ": " + rep.summary());
        worst_balance = std::max(worst_balance, rep.worst_balance);
        worst_shift = std::max(worst_shift, rep.worst_day_balance);
    }
    o.detail = std::to_string(g_solved.size()) + " solutions, worst nodal balance " + fmt("%.2g MW", worst_balance) +
               fmt(", worst daily shift balance %.2g MWh", worst_shift) + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome decomposition() {
    Outcome o;
    double worst = 0.0;
    for (const auto& s : g_solved) {
        const CostBreakdown b = objective_breakdown(s.result);
        const double obj = s.result.solution.objective;
        const double gap = std::abs(b.total() - obj) / std::max(1.0, std::abs(obj));
        worst = std::max(worst, gap);
        o.require(gap <= 1e-6, s.label + fmt(" off by %.3g", gap));
    }
    o.detail = std::to_string(g_solved.size()) + " solutions, max rel gap " + fmt("%.2g", worst) +
               (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome mps_round_trip(Desk& d) {
    Outcome o;
    const ScenarioConfig base = load_scenario(kData / "desk/baseline.json");
    const BuiltLp built = build_lp(apply_scenario(d.system, base), base);
    const Solution direct = solve(built.problem);
    o.require(direct.status == SolveStatus::optimal, "direct solve " + to_string(direct.status));
    std::ostringstream s;
    for (MpsFormat f : {MpsFormat::fixed, MpsFormat::free}) {
        std::stringstream text;
        write_mps(built.problem, text, f);
        const Solution back = solve(read_mps(text));
        const double gap = std::abs(back.objective - direct.objective) / std::abs(direct.objective);
        const char* name = f == MpsFormat::fixed ? "fixed" : "free";
        o.require(back.status == SolveStatus::optimal && gap <= 1e-9, std::string(name) + fmt(" off by %.3g", gap));
        s << name << fmt(" rel gap %.2g, ", gap);
    }
    o.detail = s.str() + fmt("objective %.9g", direct.objective) + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome shift_limits() {
    Outcome o;
    const auto em = derive_emob_shift_limits(30.4e6);
    const double day = std::round(em.e_day_max * 1000.0) / 1000.0;
    const double hr = std::round(em.e_hr_max * 1000.0) / 1000.0;
    o.require(day == 8328.767, fmt("daily %.6f", em.e_day_max));
    o.require(hr == 832.877, fmt("hourly %.6f", em.e_hr_max));
    o.detail = fmt("E_day %.3f MWh", em.e_day_max) + fmt(", E_hr %.3f MW", em.e_hr_max) +
               (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto run = [&](int n, const char* name, const std::function<Outcome()>& f) {
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.pass;
        std::printf("criterion %2d %s  %s: %s\n", n, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    };

    Desk desk;
    run(1, "oracle equivalence", oracle_equivalence);
    run(2, "micro-instance", micro_instance);
    run(3, "DC flow triangle", triangle);
    run(4, "flexibility monotonicity", [&] { return monotonicity(desk); });
    run(5, "reduced cross-border", [&] { return reduced_cross_border(desk); });
    run(6, "gas price sweep", [&] { return gas_sweep(desk); });
    try {
        solve_remaining_fixtures();
    } catch (const std::exception& e) {
        std::printf("fixture solve failed: %s\n", e.what());
        ++failures;
    }
    run(7, "residual audit", residual_audit);
    run(8, "objective decomposition", decomposition);
    run(9, "MPS round trip", [&] { return mps_round_trip(desk); });
    run(10, "shift limit derivation", shift_limits);
    std::printf("%s (%d failed)\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
