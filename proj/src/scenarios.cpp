#include "gep/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <optional>
#include <thread>

#include "json.hpp"

#include "gep/csv.hpp"
#include "gep/ingest.hpp"
#include "gep/report.hpp"

namespace gep {

namespace {

using nlohmann::json;

/// Runs f(i) for i in [0, n) on up to `threads` workers.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

SolveStatus parse_status(const std::string& s) {
    for (SolveStatus st : {SolveStatus::optimal, SolveStatus::infeasible, SolveStatus::unbounded,
                           SolveStatus::iteration_limit}) {
        if (to_string(st) == s) return st;
    }
    throw std::invalid_argument("unknown solve status '" + s + "'");
}

}  // namespace

ScenarioResult run_scenario(const SystemModel& system, const ScenarioConfig& config, const SolveOptions& opts) {
    auto applied = std::make_shared<const SystemModel>(apply_scenario(system, config));
    BuiltLp built = build_lp(*applied, config);
    ScenarioResult r;
    r.config = config;
    r.solution = solve(built.problem, opts);
    if (r.solution.status != SolveStatus::optimal) throw ScenarioFailure(config.name, r.solution.status);
    r.system = applied;
    r.index = std::move(built.index);
    r.solution.term_breakdown = objective_breakdown(*applied, config, r.index, r.solution.values);
    r.investments = investments_table(*applied, r.index, r.solution.values);
    for (const auto& n : applied->nodes) r.load_shed_total[n.country] += 0.0;
    for (std::size_t n = 0; n < applied->nodes.size(); ++n) {
        double shed = 0.0;
        for (std::size_t t = 0; t < r.index.horizon(); ++t) shed += r.solution.values[r.index.shed(n, t)];
        r.load_shed_total[applied->nodes[n].country] += shed / 1000.0;
    }
    return r;
}

MatrixResult run_matrix(const SystemModel& system, const std::vector<ScenarioConfig>& configs, const SolveOptions& opts,
                        unsigned threads) {
    std::vector<std::optional<ScenarioResult>> slots(configs.size());
    std::vector<std::optional<ScenarioFailure>> failures(configs.size());
    std::vector<std::string> errors(configs.size());
    parallel_for(configs.size(), threads, [&](std::size_t i) {
        try {
            slots[i] = run_scenario(system, configs[i], opts);
        } catch (const ScenarioFailure& e) {
            failures[i] = e;
        } catch (const std::exception& e) {
            errors[i] = configs[i].name + ": " + e.what();
        }
    });

    MatrixResult out;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (failures[i] || !errors[i].empty()) {
            out.aborted = true;
            out.failure = failures[i] ? std::string(failures[i]->what()) : errors[i];
            out.failure_status = failures[i] ? failures[i]->status() : SolveStatus::optimal;
            break;
        }
        out.rows.push_back(std::move(*slots[i]));
    }
    if (!out.rows.empty()) {
        const double base = out.rows.front().solution.objective;
        const double denom = std::abs(base);
        for (auto& r : out.rows) {
            r.objective_delta_vs_baseline = denom > 0.0 ? (r.solution.objective - base) / denom * 100.0 : 0.0;
        }
    }
    return out;
}

double gas_energy(const ScenarioResult& r) {
    double e = 0.0;
    for (std::size_t j = 0; j < r.system->thermal_units.size(); ++j) {
        if (!is_gas(r.system->thermal_units[j].tech)) continue;
        for (std::size_t t = 0; t < r.index.horizon(); ++t) e += r.solution.values[r.index.thermal_p(j, t)];
    }
    return e;
}

std::vector<SweepRow> gas_price_sweep(const SystemModel& system, const ScenarioConfig& base,
                                      const std::vector<double>& multipliers, const SolveOptions& opts,
                                      unsigned threads) {
    if (multipliers.empty()) throw std::invalid_argument("no multipliers given");
    for (std::size_t i = 0; i < multipliers.size(); ++i) {
        if (!(multipliers[i] >= 1.0)) throw std::invalid_argument("gas price multipliers must be >= 1");
        if (i > 0 && multipliers[i] < multipliers[i - 1]) {
            throw std::invalid_argument("gas price multipliers must be sorted ascending");
        }
    }
    std::vector<ScenarioConfig> configs;
    for (double m : multipliers) {
        ScenarioConfig c = base;
        c.gas_price_multiplier = base.gas_price_multiplier * m;
        c.name = base.name + " x" + format_number(m, 6);
        configs.push_back(c);
    }
    MatrixResult m = run_matrix(system, configs, opts, threads);
    if (m.aborted) throw ScenarioFailure(m.failure, m.failure_status);

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < multipliers.size(); ++i) {
        SweepRow row;
        row.multiplier = multipliers[i];
        row.result = std::move(m.rows[i]);
        row.objective = row.result.solution.objective;
        row.gas_energy = gas_energy(row.result);
        for (const char* tech : {"gas_syn", "gas_ccs"}) {
            double mw = 0.0;
            for (const auto& inv : row.result.investments) {
                if (inv.tech == tech) mw = inv.mw;
            }
            row.gas_investments.push_back({tech, mw});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void save_result(const ScenarioResult& r, const std::filesystem::path& path) {
    json j;
    j["system_dir"] = r.system_dir;
    j["config"] = {{"name", r.config.name},
                   {"allow_gas_candidates", r.config.allow_gas_candidates},
                   {"allow_shifting", r.config.allow_shifting},
                   {"xborder_scale", r.config.xborder_scale},
                   {"gas_price_multiplier", r.config.gas_price_multiplier},
                   {"res_target_B", r.config.res_target},
                   {"horizon_T", r.config.horizon},
                   {"cost_load_shed", r.config.cost_load_shed}};
    j["status"] = to_string(r.solution.status);
    j["objective"] = r.solution.objective;
    j["iterations"] = r.solution.iterations;
    const auto& b = r.solution.term_breakdown;
    j["breakdown"] = {{"investment", b.investment}, {"thermal", b.thermal}, {"storage", b.storage},
                      {"renewable", b.renewable}, {"load_shed", b.load_shed}};
    json inv = json::object();
    for (const auto& i : r.investments) inv[i.tech] = i.mw;
    j["investments"] = inv;
    j["load_shed_gwh"] = r.load_shed_total;
    j["objective_delta_pct"] = r.objective_delta_vs_baseline;
    // Column names come from rebuilding the LP, so only values are stored.
    j["values"] = r.solution.values;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

ScenarioResult load_result(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string(), 0, "cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string(), 0, e.what());
    }
    try {
        ScenarioResult r;
        r.system_dir = j.at("system_dir").get<std::string>();
        const json& c = j.at("config");
        r.config.name = c.at("name").get<std::string>();
        r.config.allow_gas_candidates = c.at("allow_gas_candidates").get<bool>();
        r.config.allow_shifting = c.at("allow_shifting").get<bool>();
        r.config.xborder_scale = c.at("xborder_scale").get<double>();
        r.config.gas_price_multiplier = c.at("gas_price_multiplier").get<double>();
        r.config.res_target = c.at("res_target_B").get<double>();
        r.config.horizon = c.at("horizon_T").get<std::size_t>();
        r.config.cost_load_shed = c.at("cost_load_shed").get<double>();
        r.solution.status = parse_status(j.at("status").get<std::string>());
        r.solution.objective = j.at("objective").get<double>();
        r.solution.iterations = j.at("iterations").get<std::size_t>();
        const json& b = j.at("breakdown");
        r.solution.term_breakdown = {b.at("investment").get<double>(), b.at("thermal").get<double>(),
                                     b.at("storage").get<double>(), b.at("renewable").get<double>(),
                                     b.at("load_shed").get<double>()};
        for (const auto& [tech, mw] : j.at("investments").items()) r.investments.push_back({tech, mw.get<double>()});
        r.load_shed_total = j.at("load_shed_gwh").get<std::map<std::string, double>>();
        r.objective_delta_vs_baseline = j.at("objective_delta_pct").get<double>();
        r.solution.values = j.at("values").get<std::vector<double>>();

        const SystemModel system = load_system(r.system_dir);
        auto applied = std::make_shared<const SystemModel>(apply_scenario(system, r.config));
        r.index = VariableIndex(*applied);
        r.system = applied;
        if (r.index.num_columns() != r.solution.values.size()) {
            throw InputError(path.string(), 0,
                             "result has " + std::to_string(r.solution.values.size()) + " values but the model has " +
                                 std::to_string(r.index.num_columns()) + " columns");
        }
        return r;
    } catch (const json::exception& e) {
        throw InputError(path.string(), 0, std::string("malformed result: ") + e.what());
    }
}

}  // namespace gep
