// Command-line front end: validate, solve, matrix, sweep, report.
//
// Exit codes: 0 optimal (or success), 2 infeasible, 1 any other error.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gep/csv.hpp"
#include "gep/formulation.hpp"
#include "gep/ingest.hpp"
#include "gep/mps.hpp"
#include "gep/report.hpp"
#include "gep/scenarios.hpp"

namespace fs = std::filesystem;
using namespace gep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

int exit_code(SolveStatus s) {
    if (s == SolveStatus::optimal) return kExitOk;
    if (s == SolveStatus::infeasible) return kExitInfeasible;
    return kExitError;
}

std::string absolute(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

void print_summary(const ScenarioResult& r, std::ostream& out) {
    const auto& b = r.solution.term_breakdown;
    out << "scenario   " << r.config.name << '\n'
        << "status     " << to_string(r.solution.status) << '\n'
        << "objective  " << format_number(r.solution.objective, 9) << " EUR\n"
        << "  investment " << format_number(b.investment, 9) << '\n'
        << "  thermal    " << format_number(b.thermal, 9) << '\n'
        << "  storage    " << format_number(b.storage, 9) << '\n'
        << "  renewable  " << format_number(b.renewable, 9) << '\n'
        << "  load shed  " << format_number(b.load_shed, 9) << '\n'
        << "iterations " << r.solution.iterations << '\n';
    for (const auto& i : r.investments) out << "built      " << i.tech << " " << format_number(i.mw, 9) << " MW\n";
    for (const auto& [country, gwh] : r.load_shed_total) {
        out << "shed       " << country << " " << format_number(gwh, 9) << " GWh\n";
    }
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int cmd_validate(const std::string& dir) {
    const SystemModel s = load_system(dir);
    std::cout << "ok: " << s.nodes.size() << " nodes, " << s.lines.size() << " lines, " << s.thermal_units.size()
              << " thermal, " << s.storage_units.size() << " storage, " << s.renewable_units.size()
              << " renewable, " << s.horizon << " hours\n";
    return kExitOk;
}

int cmd_solve(const std::string& dir, const std::string& scenario, const std::string& mps_out, bool free_mps,
              const std::string& out) {
    const SystemModel system = load_system(dir);
    const ScenarioConfig config = scenario.empty() ? ScenarioConfig{} : load_scenario(scenario);
    if (!mps_out.empty()) {
        const BuiltLp built = build_lp(apply_scenario(system, config), config);
        export_mps(built.problem, mps_out, free_mps ? MpsFormat::free : MpsFormat::fixed);
        std::cout << "wrote " << mps_out << " (" << built.problem.num_rows() << " rows, " << built.problem.num_cols()
                  << " columns)\n";
    }
    try {
        ScenarioResult r = run_scenario(system, config);
        r.system_dir = absolute(dir);
        print_summary(r, std::cout);
        if (!out.empty()) save_result(r, out);
        return kExitOk;
    } catch (const ScenarioFailure& e) {
        std::cerr << e.what() << '\n';
        return exit_code(e.status());
    }
}

int cmd_matrix(const std::string& dir, const std::string& scenarios, const std::string& out, unsigned threads) {
    const SystemModel system = load_system(dir);
    const auto configs = load_scenario_matrix(scenarios);
    MatrixResult m = run_matrix(system, configs, {}, threads);
    fs::create_directories(out);

    std::vector<std::string> techs, countries;
    for (const auto& r : m.rows) {
        for (const auto& i : r.investments) {
            if (std::find(techs.begin(), techs.end(), i.tech) == techs.end()) techs.push_back(i.tech);
        }
        for (const auto& [c, _] : r.load_shed_total) {
            if (std::find(countries.begin(), countries.end(), c) == countries.end()) countries.push_back(c);
        }
    }
    std::sort(techs.begin(), techs.end());
    std::sort(countries.begin(), countries.end());
    Table summary;
    summary.columns = {"scenario", "objective_eur", "delta_pct"};
    for (const auto& t : techs) summary.columns.push_back("built_" + t + "_mw");
    for (const auto& c : countries) summary.columns.push_back("shed_" + c + "_gwh");

    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        auto& r = m.rows[i];
        r.system_dir = absolute(dir);
        save_result(r, fs::path(out) / ("scenario_" + std::to_string(i) + ".json"));
        std::vector<Table::Cell> row{r.config.name, r.solution.objective, r.objective_delta_vs_baseline};
        for (const auto& t : techs) {
            double mw = 0.0;
            for (const auto& inv : r.investments) {
                if (inv.tech == t) mw = inv.mw;
            }
            row.push_back(mw);
        }
        for (const auto& c : countries) {
            auto it = r.load_shed_total.find(c);
            row.push_back(it == r.load_shed_total.end() ? 0.0 : it->second);
        }
        summary.rows.push_back(std::move(row));
    }
    emit(summary, fs::path(out) / "summary.csv", Format::csv);
    std::cout << render(summary, Format::csv);
    if (m.aborted) {
        std::cerr << "matrix aborted: " << m.failure << '\n';
        return m.failure_status == SolveStatus::optimal ? kExitError : exit_code(m.failure_status);
    }
    return kExitOk;
}

int cmd_sweep(const std::string& dir, const std::string& param, const std::string& values,
              const std::string& scenario, const std::string& out, unsigned threads) {
    if (param != "gas_price") throw std::invalid_argument("unsupported sweep parameter '" + param + "'");
    const SystemModel system = load_system(dir);
    const ScenarioConfig base = scenario.empty() ? ScenarioConfig{} : load_scenario(scenario);
    try {
        const auto rows = gas_price_sweep(system, base, parse_values(values), {}, threads);
        Table t;
        t.columns = {"multiplier", "objective_eur", "gas_syn_mw", "gas_ccs_mw", "gas_energy_mwh"};
        for (const auto& r : rows) {
            t.rows.push_back({r.multiplier, r.objective, r.gas_investments[0].mw, r.gas_investments[1].mw, r.gas_energy});
        }
        if (!out.empty()) emit(t, out, Format::csv);
        std::cout << render(t, Format::csv);
        return kExitOk;
    } catch (const ScenarioFailure& e) {
        std::cerr << e.what() << '\n';
        return exit_code(e.status());
    }
}

int cmd_report(const std::string& result_path, const std::string& table, const std::string& format,
               const std::string& aggregation, const std::string& country, const std::string& kind,
               const std::string& sample, const std::string& out) {
    const ScenarioResult r = load_result(result_path);
    const Format fmt = format == "json" ? Format::json : Format::csv;
    Table t;
    if (table == "investments") {
        t = to_table(investments_table(r));
    } else if (table == "breakdown") {
        t = to_table(objective_breakdown(r));
    } else if (table == "stack") {
        const Aggregation a = aggregation == "daily"    ? Aggregation::daily
                              : aggregation == "weekly" ? Aggregation::weekly
                                                        : Aggregation::hourly;
        t = to_table(dispatch_stack(r, a, {0, r.index.horizon()}, country));
    } else if (table == "levels") {
        const StorageKind k = parse_storage_kind(kind);
        const LevelSample s = sample == "end_of_month" ? LevelSample::end_of_month : LevelSample::hourly;
        t = levels_table(storage_levels(r, k, s), k, s);
    } else {
        throw std::invalid_argument("unknown table '" + table + "'");
    }
    if (out.empty()) {
        std::cout << render(t, fmt);
    } else {
        emit(t, out, fmt);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generation expansion planning LP engine"};
    app.require_subcommand(1);

    std::string dir, scenario, mps_out, out, scenarios, param, values, result, table, format = "csv";
    std::string aggregation = "hourly", country, kind = "dam", sample = "hourly";
    bool free_mps = false;
    unsigned threads = 0;

    auto* validate = app.add_subcommand("validate", "Load and validate a system directory");
    validate->add_option("dir", dir, "System directory")->required();

    auto* solve_cmd = app.add_subcommand("solve", "Solve one scenario");
    solve_cmd->add_option("dir", dir, "System directory")->required();
    solve_cmd->add_option("--scenario", scenario, "Scenario JSON file");
    solve_cmd->add_option("--mps-out", mps_out, "Also write the LP as MPS");
    solve_cmd->add_flag("--free-mps", free_mps, "Write free-format MPS");
    solve_cmd->add_option("--out", out, "Write the result JSON here");

    auto* matrix = app.add_subcommand("matrix", "Run a scenario matrix; the first scenario is the baseline");
    matrix->add_option("dir", dir, "System directory")->required();
    matrix->add_option("--scenarios", scenarios, "Scenario matrix JSON file")->required();
    matrix->add_option("--out", out, "Output directory")->required();
    matrix->add_option("--threads", threads, "Concurrent scenarios (0 = all cores)");

    auto* sweep = app.add_subcommand("sweep", "Sensitivity sweep over a price multiplier");
    sweep->add_option("dir", dir, "System directory")->required();
    sweep->add_option("--param", param, "Parameter to sweep")->required()->check(CLI::IsMember({"gas_price"}));
    sweep->add_option("--values", values, "Comma-separated multipliers")->required();
    sweep->add_option("--scenario", scenario, "Base scenario JSON file");
    sweep->add_option("--out", out, "Also write the table as CSV here");
    sweep->add_option("--threads", threads, "Concurrent runs (0 = all cores)");

    auto* report = app.add_subcommand("report", "Extract a table from a result file");
    report->add_option("result", result, "Result JSON written by solve or matrix")->required();
    report->add_option("--table", table, "Table to extract")
        ->required()
        ->check(CLI::IsMember({"investments", "stack", "levels", "breakdown"}));
    report->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    report->add_option("--aggregation", aggregation, "Stack periods")->check(CLI::IsMember({"hourly", "daily", "weekly"}));
    report->add_option("--country", country, "Stack region (default: whole system)");
    report->add_option("--kind", kind, "Storage kind for levels")->check(CLI::IsMember({"dam", "pump", "battery"}));
    report->add_option("--sample", sample, "Level sampling")->check(CLI::IsMember({"hourly", "end_of_month"}));
    report->add_option("--out", out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*validate) return cmd_validate(dir);
        if (*solve_cmd) return cmd_solve(dir, scenario, mps_out, free_mps, out);
        if (*matrix) return cmd_matrix(dir, scenarios, out, threads);
        if (*sweep) return cmd_sweep(dir, param, values, scenario, out, threads);
        if (*report) return cmd_report(result, table, format, aggregation, country, kind, sample, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
